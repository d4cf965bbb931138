#include "checkpoint.hpp"

#include <fstream>

#include <json.hpp>

#include "errors.hpp"

namespace periraise::checkpoint {

namespace {

using nlohmann::json;

json shape_to_json(const nn::MlpShape& s) {
    return {{"in", s.in},
            {"hidden", s.hidden},
            {"out", s.out},
            {"tanh_output", s.tanh_output},
            {"has_log_std", s.has_log_std}};
}

nn::MlpShape shape_from_json(const json& j) {
    nn::MlpShape s;
    s.in = j.at("in").get<int>();
    s.hidden = j.at("hidden").get<int>();
    s.out = j.at("out").get<int>();
    s.tanh_output = j.at("tanh_output").get<bool>();
    s.has_log_std = j.at("has_log_std").get<bool>();
    return s;
}

json params_to_json(const nn::MlpParams& p) {
    json j;
    j["shape"] = shape_to_json(p.shape());
    j["w1"] = std::vector<double>(p.w1(), p.w1() + p.w1_size());
    j["b1"] = std::vector<double>(p.b1(), p.b1() + p.b1_size());
    j["w2"] = std::vector<double>(p.w2(), p.w2() + p.w2_size());
    j["b2"] = std::vector<double>(p.b2(), p.b2() + p.b2_size());
    if (p.log_std_size() > 0)
        j["log_std"] = std::vector<double>(p.log_std(), p.log_std() + p.log_std_size());
    return j;
}

void copy_block(const json& arr, double* dst, std::size_t n, const char* name) {
    if (!arr.is_array() || arr.size() != n)
        throw ParseError(std::string("checkpoint: bad size for ") + name);
    for (std::size_t i = 0; i < n; ++i) dst[i] = arr[i].get<double>();
}

nn::MlpParams params_from_json(const json& j) {
    nn::MlpParams p(shape_from_json(j.at("shape")));
    copy_block(j.at("w1"), p.w1(), p.w1_size(), "w1");
    copy_block(j.at("b1"), p.b1(), p.b1_size(), "b1");
    copy_block(j.at("w2"), p.w2(), p.w2_size(), "w2");
    copy_block(j.at("b2"), p.b2(), p.b2_size(), "b2");
    if (p.log_std_size() > 0) copy_block(j.at("log_std"), p.log_std(), p.log_std_size(), "log_std");
    return p;
}

json adam_to_json(const nn::AdamState& a) {
    return {{"m", a.m}, {"v", a.v}, {"step", a.step}};
}

nn::AdamState adam_from_json(const json& j) {
    nn::AdamState a(j.at("m").size());
    copy_block(j.at("m"), a.m.data(), a.m.size(), "adam.m");
    copy_block(j.at("v"), a.v.data(), a.v.size(), "adam.v");
    a.step = j.at("step").get<long long>();
    return a;
}

}  // namespace

void save(const std::string& path, const Checkpoint& ckpt) {
    json j;
    j["format_version"] = 1;
    j["actor"] = params_to_json(ckpt.actor);
    j["critic"] = params_to_json(ckpt.critic);
    if (ckpt.adam) {
        j["adam"] = {{"actor", adam_to_json(ckpt.adam->actor)},
                     {"critic", adam_to_json(ckpt.adam->critic)}};
    }
    j["meta"] = {{"training_step", ckpt.meta.training_step},
                 {"seed", ckpt.meta.seed},
                 {"eval_reward", ckpt.meta.eval_reward},
                 {"eval_mean_anomaly", ckpt.meta.eval_mean_anomaly},
                 {"has_eval", ckpt.meta.has_eval}};

    std::ofstream out(path);
    if (!out) throw Error("checkpoint: cannot open for writing: " + path);
    out << j.dump(1) << "\n";
    if (!out) throw Error("checkpoint: write failed: " + path);
}

Checkpoint load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("checkpoint: cannot open: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError("checkpoint: invalid JSON in " + path + ": " + e.what());
    }
    try {
        if (j.at("format_version").get<int>() != 1)
            throw ParseError("checkpoint: unsupported format version");
        Checkpoint ckpt(params_from_json(j.at("actor")), params_from_json(j.at("critic")));
        if (j.contains("adam")) {
            AdamSnapshot snap;
            snap.actor = adam_from_json(j.at("adam").at("actor"));
            snap.critic = adam_from_json(j.at("adam").at("critic"));
            ckpt.adam = std::move(snap);
        }
        if (j.contains("meta")) {
            const json& m = j.at("meta");
            ckpt.meta.training_step = m.value("training_step", 0LL);
            ckpt.meta.seed = m.value("seed", std::uint64_t{0});
            ckpt.meta.eval_reward = m.value("eval_reward", 0.0);
            ckpt.meta.eval_mean_anomaly = m.value("eval_mean_anomaly", 0.0);
            ckpt.meta.has_eval = m.value("has_eval", false);
        }
        return ckpt;
    } catch (const json::exception& e) {
        throw ParseError("checkpoint: malformed content in " + path + ": " + e.what());
    }
}

}  // namespace periraise::checkpoint
