#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "zosga/harness.hpp"

namespace zosga {

enum class ExportFormat { csv, json };

inline ExportFormat parse_format(const std::string& f) {
    if (f == "csv") return ExportFormat::csv;
    if (f == "json") return ExportFormat::json;
    throw ConfigError("unknown format '" + f + "' (expected csv|json)");
}

// CSV layout: one row per (record, iteration), fixed column set, numbers with
// 17 significant digits so doubles round-trip exactly.
inline std::string to_csv(const std::vector<RunRecord>& records) {
    std::string out = "iteration,mean_sumrate,std_sumrate,n_sims,method,scenario_hash\n";
    char buf[64];
    for (const RunRecord& r : records) {
        for (size_t t = 0; t < r.mean_sumrate.size(); ++t) {
            out += std::to_string(t);
            out += ',';
            std::snprintf(buf, sizeof(buf), "%.17g", r.mean_sumrate[t]);
            out += buf;
            out += ',';
            std::snprintf(buf, sizeof(buf), "%.17g", r.std_sumrate[t]);
            out += buf;
            out += ',';
            out += std::to_string(r.n_sims);
            out += ',';
            out += r.method;
            out += ',';
            out += r.scenario_hash;
            out += '\n';
        }
    }
    return out;
}

inline nlohmann::json to_json(const std::vector<RunRecord>& records) {
    nlohmann::json root;
    root["records"] = nlohmann::json::array();
    for (const RunRecord& r : records) {
        nlohmann::json j;
        j["scenario_hash"] = r.scenario_hash;
        j["method"] = r.method;
        j["master_seed"] = r.master_seed;
        j["n_sims"] = r.n_sims;
        j["iters"] = r.iters;
        j["mean_sumrate"] = r.mean_sumrate;
        j["std_sumrate"] = r.std_sumrate;
        j["final_sumrates"] = r.final_sumrates;
        j["wall_clock_seconds"] = r.wall_clock_seconds;
        j["config"] = r.config;
        root["records"].push_back(std::move(j));
    }
    return root;
}

inline void export_results(const std::vector<RunRecord>& records,
                           const std::string& path, ExportFormat format) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open output file: " + path);
    if (format == ExportFormat::csv) out << to_csv(records);
    else out << to_json(records).dump(2) << '\n';
    if (!out)
        throw std::runtime_error("write failed: " + path);
}

// Aggregate view parsed back from a CSV export.
struct CsvBlock {
    std::string method;
    std::string scenario_hash;
    int n_sims = 0;
    std::vector<double> mean_sumrate;
    std::vector<double> std_sumrate;
};

inline std::vector<CsvBlock> import_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open input file: " + path);
    std::string line;
    if (!std::getline(in, line) ||
        line != "iteration,mean_sumrate,std_sumrate,n_sims,method,scenario_hash")
        throw std::runtime_error("unexpected CSV header in " + path);
    std::vector<CsvBlock> blocks;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 6)
            throw std::runtime_error("malformed CSV row in " + path);
        const long iteration = std::stol(fields[0]);
        if (iteration == 0 || blocks.empty()) blocks.emplace_back();
        CsvBlock& b = blocks.back();
        b.mean_sumrate.push_back(std::stod(fields[1]));
        b.std_sumrate.push_back(std::stod(fields[2]));
        b.n_sims = std::stoi(fields[3]);
        b.method = fields[4];
        b.scenario_hash = fields[5];
    }
    return blocks;
}

inline std::vector<RunRecord> import_json(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open input file: " + path);
    nlohmann::json root = nlohmann::json::parse(in);
    std::vector<RunRecord> records;
    for (const auto& j : root.at("records")) {
        RunRecord r;
        r.scenario_hash = j.at("scenario_hash").get<std::string>();
        r.method = j.at("method").get<std::string>();
        r.master_seed = j.at("master_seed").get<std::uint64_t>();
        r.n_sims = j.at("n_sims").get<int>();
        r.iters = j.at("iters").get<long>();
        r.mean_sumrate = j.at("mean_sumrate").get<std::vector<double>>();
        r.std_sumrate = j.at("std_sumrate").get<std::vector<double>>();
        r.final_sumrates = j.at("final_sumrates").get<std::vector<double>>();
        r.wall_clock_seconds = j.at("wall_clock_seconds").get<double>();
        r.config = j.at("config").get<std::map<std::string, std::string>>();
        records.push_back(std::move(r));
    }
    return records;
}

} // namespace zosga
