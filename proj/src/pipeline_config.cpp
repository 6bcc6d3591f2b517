#include "proxemb/pipeline_config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "proxemb/csv.hpp"

namespace proxemb {

EmbeddingKind embedding_from_name(const std::string& name) {
    if (name == "svd") return EmbeddingKind::svd;
    if (name == "cfs") return EmbeddingKind::cfs;
    if (name == "diag") return EmbeddingKind::diag;
    throw data_error("unknown embedding '" + name +
                     "' (expected svd, cfs or diag)");
}

std::string embedding_name(EmbeddingKind k) {
    switch (k) {
    case EmbeddingKind::svd: return "svd";
    case EmbeddingKind::cfs: return "cfs";
    case EmbeddingKind::diag: return "diag";
    }
    throw data_error("unhandled embedding kind");
}

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    char* end = nullptr;
    double x = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size())
        throw data_error("config key '" + key + "': bad number '" + v + "'");
    return x;
}

int parse_int(const std::string& key, const std::string& v) {
    char* end = nullptr;
    long x = std::strtol(v.c_str(), &end, 10);
    if (v.empty() || end != v.c_str() + v.size())
        throw data_error("config key '" + key + "': bad integer '" + v + "'");
    return int(x);
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw data_error("config key '" + key + "': bad boolean '" + v + "'");
}

std::vector<double> parse_scales(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty())
            throw data_error("config key '" + key + "': empty scale entry");
        out.push_back(parse_double(key, item));
    }
    if (out.empty())
        throw data_error("config key '" + key + "': no scales given");
    return out;
}

} // namespace

void PipelineConfig::set(const std::string& rawkey, const std::string& rawval) {
    std::string key = trim(rawkey), v = trim(rawval);
    if (key == "proximity") proximity = proximity_from_name(v);
    else if (key == "proximity.T") ppmi_T = parse_int(key, v);
    else if (key == "proximity.b") ppmi_b = parse_double(key, v);
    else if (key == "proximity.s") heat_s = parse_double(key, v);
    else if (key == "proximity.a") fabp_a = parse_double(key, v);
    else if (key == "proximity.c") fabp_c = parse_double(key, v);
    else if (key == "proximity.heuristic") fabp_heuristic = parse_bool(key, v);
    else if (key == "proximity.c2") {
        if (v == "trace_d2") fabp_c2 = FabpVariant::trace_d2;
        else if (v == "trace_d") fabp_c2 = FabpVariant::trace_d;
        else throw data_error("config key 'proximity.c2': expected trace_d2 "
                              "or trace_d, got '" + v + "'");
    }
    else if (key == "proximity.beta") ppr_beta = parse_double(key, v);
    else if (key == "proximity.use_transition")
        ppr_use_transition = parse_bool(key, v);
    else if (key == "proximity.k") power_k = parse_int(key, v);
    else if (key == "filter") filter = filter_from_name(v);
    else if (key == "filter.p") filter_p = parse_double(key, v);
    else if (key == "embedding") embedding = embedding_from_name(v);
    else if (key == "embedding.dim") dim = parse_int(key, v);
    else if (key == "embedding.cfs_normalize")
        cfs_normalize = parse_bool(key, v);
    else if (key == "scales") scales = parse_scales(key, v);
    else if (key == "seed") {
        char* end = nullptr;
        seed = std::strtoull(v.c_str(), &end, 10);
        if (v.empty() || end != v.c_str() + v.size())
            throw data_error("config key 'seed': bad integer '" + v + "'");
    }
    else throw data_error("unknown config key '" + key + "'");
}

PipelineConfig PipelineConfig::from_entries(
    const std::map<std::string, std::string>& entries) {
    PipelineConfig cfg;
    for (const auto& [k, v] : entries)
        cfg.set(k, v);
    return cfg;
}

PipelineConfig PipelineConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw data_error("cannot open config file: " + path);
    PipelineConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        if (trim(line).empty())
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw data_error(path + ":" + std::to_string(lineno) +
                             ": expected 'key = value'");
        cfg.set(line.substr(0, eq), line.substr(eq + 1));
    }
    return cfg;
}

std::string PipelineConfig::serialize() const {
    std::ostringstream out;
    out << "proximity = " << proximity_name(proximity) << "\n";
    if (ppmi_T) out << "proximity.T = " << *ppmi_T << "\n";
    if (ppmi_b) out << "proximity.b = " << format_double(*ppmi_b) << "\n";
    if (heat_s) out << "proximity.s = " << format_double(*heat_s) << "\n";
    if (fabp_a) out << "proximity.a = " << format_double(*fabp_a) << "\n";
    if (fabp_c) out << "proximity.c = " << format_double(*fabp_c) << "\n";
    if (fabp_heuristic) out << "proximity.heuristic = true\n";
    if (fabp_c2 != FabpVariant::trace_d2) out << "proximity.c2 = trace_d\n";
    if (ppr_beta) out << "proximity.beta = " << format_double(*ppr_beta) << "\n";
    if (ppr_use_transition) out << "proximity.use_transition = true\n";
    if (power_k) out << "proximity.k = " << *power_k << "\n";
    out << "filter = " << filter_name(filter) << "\n";
    if (filter == Filter::bin)
        out << "filter.p = " << format_double(filter_p) << "\n";
    out << "embedding = " << embedding_name(embedding) << "\n";
    out << "embedding.dim = " << dim << "\n";
    if (embedding == EmbeddingKind::cfs)
        out << "embedding.cfs_normalize = " << (cfs_normalize ? "true" : "false")
            << "\n";
    if (!scales.empty()) {
        out << "scales = ";
        for (std::size_t i = 0; i < scales.size(); ++i)
            out << (i ? "," : "") << format_double(scales[i]);
        out << "\n";
    }
    out << "seed = " << seed << "\n";
    return out.str();
}

} // namespace proxemb
