#include "fakemu/spec_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <variant>
#include <vector>

#include <json.hpp>

#include "fakemu/exact_real.hpp"

namespace fakemu {

namespace {

using json = nlohmann::ordered_json;

void put_stream(json& tail, const char* key, const ExactReal& x) {
    tail[key] = x.str();
    if (x.nonterminating())
        tail[std::string(key) + "_nonterminating"] = true;
}

ExactReal get_stream(const json& tail, const char* key) {
    if (!tail.contains(key) || !tail[key].is_string())
        throw std::invalid_argument(
            std::string("SpecDocument: bitstream tail needs string field ") +
            key);
    ExactReal plain = ExactReal::parse(tail[key].get<std::string>());
    const std::string flag = std::string(key) + "_nonterminating";
    if (tail.contains(flag) && tail[flag].get<bool>())
        return ExactReal(plain.value(), true);
    return plain;
}

std::vector<int> get_int_array(const json& j, const char* what) {
    if (!j.is_array())
        throw std::invalid_argument(
            std::string("SpecDocument: ") + what + " must be an array");
    std::vector<int> out;
    out.reserve(j.size());
    for (const auto& e : j) {
        if (!e.is_number_integer())
            throw std::invalid_argument(
                std::string("SpecDocument: ") + what +
                " entries must be integers");
        out.push_back(e.get<int>());
    }
    return out;
}

}  // namespace

std::string spec_to_json(const EpsilonSpec& spec) {
    json j;
    if (!spec.name().empty()) j["name"] = spec.name();
    j["prefix"] = spec.prefix();
    json tail;
    if (const auto* c = std::get_if<ConstantTail>(&spec.tail())) {
        tail["kind"] = "constant";
        tail["value"] = c->value;
    } else if (const auto* p = std::get_if<PeriodicTail>(&spec.tail())) {
        tail["kind"] = "periodic";
        tail["pattern"] = p->pattern;
    } else if (const auto* m = std::get_if<MuRTail>(&spec.tail())) {
        tail["kind"] = "mu_r";
        tail["r"] = m->r;
    } else {
        const auto& b = std::get<BitstreamTail>(spec.tail());
        tail["kind"] = "bitstream";
        put_stream(tail, "alpha_plus", b.alpha_plus);
        put_stream(tail, "alpha_minus", b.alpha_minus);
        put_stream(tail, "beta_plus", b.beta_plus);
        put_stream(tail, "beta_minus", b.beta_minus);
    }
    j["tail"] = std::move(tail);
    return j.dump(2) + "\n";
}

EpsilonSpec spec_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(
            std::string("SpecDocument: not valid JSON: ") + e.what());
    }
    if (!j.is_object())
        throw std::invalid_argument("SpecDocument: top level must be an object");
    std::string name;
    if (j.contains("name")) {
        if (!j["name"].is_string())
            throw std::invalid_argument("SpecDocument: name must be a string");
        name = j["name"].get<std::string>();
    }
    if (!j.contains("prefix"))
        throw std::invalid_argument("SpecDocument: missing prefix");
    std::vector<int> prefix = get_int_array(j["prefix"], "prefix");
    if (!j.contains("tail") || !j["tail"].is_object())
        throw std::invalid_argument("SpecDocument: missing tail object");
    const json& tail = j["tail"];
    if (!tail.contains("kind") || !tail["kind"].is_string())
        throw std::invalid_argument("SpecDocument: tail needs a kind string");
    const std::string kind = tail["kind"].get<std::string>();

    try {
        if (kind == "constant") {
            if (!tail.contains("value") || !tail["value"].is_number_integer())
                throw std::invalid_argument(
                    "SpecDocument: constant tail needs integer value");
            return EpsilonSpec(prefix, ConstantTail{tail["value"].get<int>()},
                               name);
        }
        if (kind == "periodic") {
            if (!tail.contains("pattern"))
                throw std::invalid_argument(
                    "SpecDocument: periodic tail needs pattern");
            return EpsilonSpec(
                prefix, PeriodicTail{get_int_array(tail["pattern"], "pattern")},
                name);
        }
        if (kind == "mu_r") {
            if (!tail.contains("r") || !tail["r"].is_number_integer())
                throw std::invalid_argument(
                    "SpecDocument: mu_r tail needs integer r");
            return EpsilonSpec(prefix, MuRTail{tail["r"].get<int>()}, name);
        }
        if (kind == "bitstream") {
            BitstreamTail b{get_stream(tail, "alpha_plus"),
                            get_stream(tail, "alpha_minus"),
                            get_stream(tail, "beta_plus"),
                            get_stream(tail, "beta_minus")};
            return EpsilonSpec(prefix, std::move(b), name);
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(
            std::string("SpecDocument: malformed tail: ") + e.what());
    }
    throw std::invalid_argument("SpecDocument: unknown tail kind " + kind);
}

void save_spec(const EpsilonSpec& spec, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("save_spec: cannot open " + path);
    out << spec_to_json(spec);
    out.flush();
    if (!out) throw std::runtime_error("save_spec: write failed on " + path);
}

EpsilonSpec load_spec(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_spec: cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return spec_from_json(buf.str());
}

}  // namespace fakemu
