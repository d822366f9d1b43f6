#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "zosga/schedule.hpp"

namespace zosga {

// Scenario files are flat key = value text; '#' starts a comment. Recognized
// keys (see scenarios/default.cfg for a worked example):
//
//   antennas, users                 AP antenna count M, user count K
//   power_dbm | power_w             total AP power budget
//   noise_dbm | noise_w             per-user noise variance (scalar default)
//   noise.<k>.dbm | noise.<k>.w     per-user override
//   weights                         scalar or comma list of K sumrate weights
//   amplitude_mode                  adjustable | unit
//   rician.beta_iu[_db]             IRS-user Rician factor (linear or dB)
//   rician.beta_ai[_db]             AP-IRS Rician factor
//   rician.beta_au[_db]             AP-user Rician factor
//   corr.r_rk, corr.r_r, corr.r_d   correlation coefficients in [0,1)
//   pathloss.c0_db | pathloss.c0    reference gain at 1 m
//   pathloss.ap_irs.alpha           per-link-class path loss exponents
//   pathloss.irs_user.alpha
//   pathloss.ap_user.alpha
//   ap.position                     "x,y" in meters (default 0,0)
//   irs.<i>.nh, irs.<i>.nv          IRS panel dimensions (N = nh*nv)
//   irs.<i>.position                "x,y"
//   irs.<i>.optimize                false freezes panel i during ascent
//   user.<k>.position               "x,y"
//   dist.ap_irs.<i>                 explicit link distances; override
//   dist.irs_user.<i>.<k>           position-derived values when present
//   dist.ap_user.<k>
//   iters                           outer iteration horizon T
//   wmmse.iters                     inner solver rounds per realization
//   mu                              probe smoothing parameter
//   phase_wrap                      wrap phases mod 2*pi before projection
//   trajectory.thin                 store every n-th iterate
//   schedule.mode                   geometric_decay | constant_theorem1
//   schedule.eta_phase, schedule.eta_amp, schedule.gamma, schedule.cutoff
//   schedule.delta_phi, schedule.rho, schedule.b_f, schedule.l_h0,
//   schedule.l_h1, schedule.delta_k

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }
inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

enum class AmplitudeMode { adjustable, unit };

inline const char* to_string(AmplitudeMode m) {
    return m == AmplitudeMode::adjustable ? "adjustable" : "unit";
}

struct IrsPanel {
    int nh = 1;
    int nv = 1;
    bool optimize = true;
    int size() const { return nh * nv; }
};

namespace detail {

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline double parse_double(const std::string& key, const std::string& v) {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        throw ConfigError("config key '" + key + "': not a number: '" + v + "'");
    return x;
}

inline long parse_long(const std::string& key, const std::string& v) {
    char* end = nullptr;
    const long x = std::strtol(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0')
        throw ConfigError("config key '" + key + "': not an integer: '" + v + "'");
    return x;
}

inline bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError("config key '" + key + "': not a boolean: '" + v + "'");
}

inline std::vector<double> parse_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::string item;
    std::stringstream ss(v);
    while (std::getline(ss, item, ','))
        out.push_back(parse_double(key, item));
    if (out.empty())
        throw ConfigError("config key '" + key + "': empty list");
    return out;
}

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline Point parse_point(const std::string& key, const std::string& v) {
    const auto vals = parse_list(key, v);
    if (vals.size() != 2)
        throw ConfigError("config key '" + key + "': expected \"x,y\"");
    return {vals[0], vals[1]};
}

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline double distance(const Point& a, const Point& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

} // namespace detail

// Fully resolved simulation scenario. All stored quantities are in linear
// units (watts, linear power ratios, meters); dB inputs are converted at
// parse time. The canonical key/value form below is what the scenario hash
// and the config snapshot in exported results are computed from, so two
// files describing the same physical setup hash identically.
struct Scenario {
    int num_antennas = 4;
    int num_users = 4;
    std::vector<IrsPanel> irs;
    AmplitudeMode amplitude_mode = AmplitudeMode::adjustable;

    double beta_iu = 1.0;
    double beta_ai = 1.0;
    double beta_au = 1.0;

    double r_rk = 0.0;
    double r_r = 0.0;
    double r_d = 0.0;

    double c0 = 1e-3;
    double alpha_ap_irs = 2.2;
    double alpha_irs_user = 2.2;
    double alpha_ap_user = 3.4;

    double power = dbm_to_watts(5.0);
    std::vector<double> noise;   // sigma_k^2, watts
    std::vector<double> weights; // alpha_k

    std::vector<double> dist_ap_irs;
    std::vector<std::vector<double>> dist_irs_user; // [irs][user]
    std::vector<double> dist_ap_user;

    long iters = 300;
    int wmmse_iters = 20;
    double mu = 1e-6;
    bool phase_wrap = false;
    long thin = 100;
    ScheduleParams schedule;

    static Scenario parse(const std::string& text);
    static Scenario load(const std::string& path);

    // re-parse with one key replaced (or added); value syntax as in the file
    void set_key(const std::string& key, const std::string& value);

    std::map<std::string, std::string> canonical() const;
    std::string canonical_text() const;
    std::string hash() const;

    void validate() const;

private:
    std::map<std::string, std::string> raw_;
    void resolve();
    friend struct ScenarioAccess;
};

namespace detail {

inline bool starts_with(const std::string& s, const std::string& p) {
    return s.rfind(p, 0) == 0;
}

// key registry; <i>/<k> index segments are matched numerically
inline bool known_key(const std::string& k) {
    static const char* exact[] = {
        "antennas", "users", "power_dbm", "power_w", "noise_dbm", "noise_w",
        "weights", "amplitude_mode", "rician.beta_iu", "rician.beta_iu_db",
        "rician.beta_ai", "rician.beta_ai_db", "rician.beta_au",
        "rician.beta_au_db", "corr.r_rk", "corr.r_r", "corr.r_d",
        "pathloss.c0_db", "pathloss.c0", "pathloss.ap_irs.alpha",
        "pathloss.irs_user.alpha", "pathloss.ap_user.alpha", "ap.position",
        "iters", "wmmse.iters", "mu", "phase_wrap", "trajectory.thin",
        "schedule.mode", "schedule.eta_phase", "schedule.eta_amp",
        "schedule.gamma", "schedule.cutoff", "schedule.delta_phi",
        "schedule.rho", "schedule.b_f", "schedule.l_h0", "schedule.l_h1",
        "schedule.delta_k"};
    for (const char* e : exact)
        if (k == e) return true;

    auto is_index = [](const std::string& s) {
        if (s.empty()) return false;
        return std::all_of(s.begin(), s.end(),
                           [](unsigned char c) { return std::isdigit(c); });
    };
    std::vector<std::string> parts;
    std::stringstream ss(k);
    std::string part;
    while (std::getline(ss, part, '.'))
        parts.push_back(part);

    if (parts.size() == 3 && parts[0] == "irs" && is_index(parts[1]) &&
        (parts[2] == "nh" || parts[2] == "nv" || parts[2] == "position" ||
         parts[2] == "optimize"))
        return true;
    if (parts.size() == 3 && parts[0] == "user" && is_index(parts[1]) &&
        parts[2] == "position")
        return true;
    if (parts.size() == 3 && parts[0] == "noise" && is_index(parts[1]) &&
        (parts[2] == "dbm" || parts[2] == "w"))
        return true;
    if (parts.size() == 3 && parts[0] == "dist" && parts[1] == "ap_irs" &&
        is_index(parts[2]))
        return true;
    if (parts.size() == 3 && parts[0] == "dist" && parts[1] == "ap_user" &&
        is_index(parts[2]))
        return true;
    if (parts.size() == 4 && parts[0] == "dist" && parts[1] == "irs_user" &&
        is_index(parts[2]) && is_index(parts[3]))
        return true;
    return false;
}

} // namespace detail

inline Scenario Scenario::parse(const std::string& text) {
    Scenario s;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash_pos = line.find('#');
        if (hash_pos != std::string::npos) line.erase(hash_pos);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) +
                              ": expected key = value");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (!detail::known_key(key))
            throw ConfigError("line " + std::to_string(lineno) +
                              ": unknown key '" + key + "'");
        if (s.raw_.count(key))
            throw ConfigError("line " + std::to_string(lineno) +
                              ": duplicate key '" + key + "'");
        s.raw_[key] = value;
    }
    s.resolve();
    return s;
}

inline Scenario Scenario::load(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open scenario file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

inline void Scenario::set_key(const std::string& key, const std::string& value) {
    // coupled alias: Fig-3b style sweeps move both IRS-side factors at once
    if (key == "rician.beta_ai_iu" || key == "rician.beta_ai_iu_db") {
        const bool db = key.back() == 'b';
        for (const char* victim :
             {"rician.beta_ai", "rician.beta_ai_db", "rician.beta_iu",
              "rician.beta_iu_db"})
            raw_.erase(victim);
        raw_[db ? "rician.beta_ai_db" : "rician.beta_ai"] = value;
        raw_[db ? "rician.beta_iu_db" : "rician.beta_iu"] = value;
        resolve();
        return;
    }
    if (!detail::known_key(key))
        throw ConfigError("unknown key '" + key + "'");
    // a plain assignment replaces the opposite-unit spelling of the same knob
    static const std::map<std::string, std::string> twins = {
        {"power_dbm", "power_w"},         {"power_w", "power_dbm"},
        {"noise_dbm", "noise_w"},         {"noise_w", "noise_dbm"},
        {"pathloss.c0_db", "pathloss.c0"}, {"pathloss.c0", "pathloss.c0_db"},
        {"rician.beta_iu", "rician.beta_iu_db"},
        {"rician.beta_iu_db", "rician.beta_iu"},
        {"rician.beta_ai", "rician.beta_ai_db"},
        {"rician.beta_ai_db", "rician.beta_ai"},
        {"rician.beta_au", "rician.beta_au_db"},
        {"rician.beta_au_db", "rician.beta_au"}};
    const auto twin = twins.find(key);
    if (twin != twins.end()) raw_.erase(twin->second);
    raw_[key] = value;
    resolve();
}

inline void Scenario::resolve() {
    using namespace detail;
    const auto& raw = raw_;

    auto get = [&](const char* key) -> const std::string* {
        const auto it = raw.find(key);
        return it == raw.end() ? nullptr : &it->second;
    };
    auto get_s = [&](const std::string& key) -> const std::string* {
        const auto it = raw.find(key);
        return it == raw.end() ? nullptr : &it->second;
    };
    auto dual = [&](const char* lin_key, const char* db_key, double fallback,
                    bool dbm) -> double {
        const std::string* lin = get(lin_key);
        const std::string* db = get(db_key);
        if (lin && db)
            throw ConfigError(std::string("both '") + lin_key + "' and '" +
                              db_key + "' given");
        if (lin) return parse_double(lin_key, *lin);
        if (db) {
            const double v = parse_double(db_key, *db);
            return dbm ? dbm_to_watts(v) : db_to_linear(v);
        }
        return fallback;
    };

    Scenario def;
    num_antennas = get("antennas")
                       ? static_cast<int>(parse_long("antennas", *get("antennas")))
                       : def.num_antennas;
    num_users = get("users")
                    ? static_cast<int>(parse_long("users", *get("users")))
                    : def.num_users;
    if (num_antennas < 1) throw ConfigError("antennas must be >= 1");
    if (num_users < 1) throw ConfigError("users must be >= 1");

    power = dual("power_w", "power_dbm", def.power, true);
    const double noise_default = dual("noise_w", "noise_dbm", dbm_to_watts(-80.0), true);
    noise.assign(num_users, noise_default);
    for (int k = 0; k < num_users; ++k) {
        const std::string wk = "noise." + std::to_string(k) + ".w";
        const std::string dk = "noise." + std::to_string(k) + ".dbm";
        const std::string* w = get_s(wk);
        const std::string* d = get_s(dk);
        if (w && d) throw ConfigError("both '" + wk + "' and '" + dk + "' given");
        if (w) noise[k] = parse_double(wk, *w);
        if (d) noise[k] = dbm_to_watts(parse_double(dk, *d));
    }

    if (const std::string* w = get("weights")) {
        weights = parse_list("weights", *w);
        if (weights.size() == 1) weights.assign(num_users, weights[0]);
        if (static_cast<int>(weights.size()) != num_users)
            throw ConfigError("weights: expected 1 or K values");
    } else {
        weights.assign(num_users, 1.0);
    }

    if (const std::string* m = get("amplitude_mode")) {
        if (*m == "adjustable") amplitude_mode = AmplitudeMode::adjustable;
        else if (*m == "unit") amplitude_mode = AmplitudeMode::unit;
        else throw ConfigError("amplitude_mode: expected adjustable|unit");
    } else {
        amplitude_mode = def.amplitude_mode;
    }

    beta_iu = dual("rician.beta_iu", "rician.beta_iu_db", def.beta_iu, false);
    beta_ai = dual("rician.beta_ai", "rician.beta_ai_db", def.beta_ai, false);
    beta_au = dual("rician.beta_au", "rician.beta_au_db", def.beta_au, false);

    r_rk = get("corr.r_rk") ? parse_double("corr.r_rk", *get("corr.r_rk")) : def.r_rk;
    r_r = get("corr.r_r") ? parse_double("corr.r_r", *get("corr.r_r")) : def.r_r;
    r_d = get("corr.r_d") ? parse_double("corr.r_d", *get("corr.r_d")) : def.r_d;

    c0 = dual("pathloss.c0", "pathloss.c0_db", def.c0, false);
    alpha_ap_irs = get("pathloss.ap_irs.alpha")
                       ? parse_double("pathloss.ap_irs.alpha", *get("pathloss.ap_irs.alpha"))
                       : def.alpha_ap_irs;
    alpha_irs_user = get("pathloss.irs_user.alpha")
                         ? parse_double("pathloss.irs_user.alpha", *get("pathloss.irs_user.alpha"))
                         : def.alpha_irs_user;
    alpha_ap_user = get("pathloss.ap_user.alpha")
                        ? parse_double("pathloss.ap_user.alpha", *get("pathloss.ap_user.alpha"))
                        : def.alpha_ap_user;

    // IRS panels: contiguous indices starting at 0
    irs.clear();
    std::vector<Point> irs_pos;
    std::vector<bool> irs_pos_set;
    for (int i = 0;; ++i) {
        const std::string prefix = "irs." + std::to_string(i) + ".";
        const std::string* nh = get_s(prefix + "nh");
        const std::string* nv = get_s(prefix + "nv");
        const std::string* pos = get_s(prefix + "position");
        const std::string* opt = get_s(prefix + "optimize");
        if (!nh && !nv && !pos && !opt) break;
        IrsPanel p;
        p.nh = nh ? static_cast<int>(parse_long(prefix + "nh", *nh)) : 1;
        p.nv = nv ? static_cast<int>(parse_long(prefix + "nv", *nv)) : 1;
        p.optimize = opt ? parse_bool(prefix + "optimize", *opt) : true;
        if (p.nh < 1 || p.nv < 1)
            throw ConfigError(prefix + "nh/nv must be >= 1");
        irs.push_back(p);
        irs_pos.push_back(pos ? parse_point(prefix + "position", *pos) : Point{});
        irs_pos_set.push_back(pos != nullptr);
    }

    const Point ap = get("ap.position") ? parse_point("ap.position", *get("ap.position"))
                                        : Point{0.0, 0.0};
    std::vector<Point> user_pos(num_users);
    std::vector<bool> user_pos_set(num_users, false);
    for (int k = 0; k < num_users; ++k) {
        const std::string key = "user." + std::to_string(k) + ".position";
        if (const std::string* v = get_s(key)) {
            user_pos[k] = parse_point(key, *v);
            user_pos_set[k] = true;
        }
    }

    auto resolved_dist = [&](const std::string& key, bool have_pos,
                             double derived) -> double {
        if (const std::string* v = get_s(key)) return parse_double(key, *v);
        if (!have_pos)
            throw ConfigError("no position or '" + key + "' for this link");
        return derived;
    };

    const int n_irs = static_cast<int>(irs.size());
    dist_ap_irs.assign(n_irs, 0.0);
    dist_irs_user.assign(n_irs, std::vector<double>(num_users, 0.0));
    dist_ap_user.assign(num_users, 0.0);
    for (int i = 0; i < n_irs; ++i) {
        dist_ap_irs[i] = resolved_dist("dist.ap_irs." + std::to_string(i),
                                       irs_pos_set[i], distance(ap, irs_pos[i]));
        for (int k = 0; k < num_users; ++k)
            dist_irs_user[i][k] = resolved_dist(
                "dist.irs_user." + std::to_string(i) + "." + std::to_string(k),
                irs_pos_set[i] && user_pos_set[k],
                distance(irs_pos[i], user_pos[k]));
    }
    for (int k = 0; k < num_users; ++k)
        dist_ap_user[k] = resolved_dist("dist.ap_user." + std::to_string(k),
                                        user_pos_set[k], distance(ap, user_pos[k]));

    iters = get("iters") ? parse_long("iters", *get("iters")) : def.iters;
    wmmse_iters = get("wmmse.iters")
                      ? static_cast<int>(parse_long("wmmse.iters", *get("wmmse.iters")))
                      : def.wmmse_iters;
    mu = get("mu") ? parse_double("mu", *get("mu")) : def.mu;
    phase_wrap = get("phase_wrap") ? parse_bool("phase_wrap", *get("phase_wrap"))
                                   : def.phase_wrap;
    thin = get("trajectory.thin") ? parse_long("trajectory.thin", *get("trajectory.thin"))
                                  : def.thin;

    schedule = ScheduleParams{};
    if (const std::string* m = get("schedule.mode")) {
        if (*m == "geometric_decay") schedule.mode = ScheduleMode::geometric_decay;
        else if (*m == "constant_theorem1") schedule.mode = ScheduleMode::constant_theorem1;
        else throw ConfigError("schedule.mode: expected geometric_decay|constant_theorem1");
    }
    auto sched_d = [&](const char* key, double& field) {
        if (const std::string* v = get(key)) field = parse_double(key, *v);
    };
    sched_d("schedule.eta_phase", schedule.eta0_phase);
    sched_d("schedule.eta_amp", schedule.eta0_amp);
    sched_d("schedule.gamma", schedule.gamma);
    sched_d("schedule.delta_phi", schedule.delta_phi);
    sched_d("schedule.rho", schedule.rho);
    sched_d("schedule.b_f", schedule.b_f);
    sched_d("schedule.l_h0", schedule.l_h0);
    sched_d("schedule.l_h1", schedule.l_h1);
    sched_d("schedule.delta_k", schedule.delta_k);
    if (const std::string* v = get("schedule.cutoff"))
        schedule.cutoff = parse_long("schedule.cutoff", *v);
    schedule.horizon = iters;

    validate();
}

inline void Scenario::validate() const {
    if (num_antennas < 1 || num_users < 1)
        throw ConfigError("antennas and users must be >= 1");
    if (power <= 0.0) throw ConfigError("power budget must be > 0");
    for (double s2 : noise)
        if (s2 <= 0.0) throw ConfigError("noise variances must be > 0");
    bool any_weight = false;
    for (double w : weights) {
        if (w < 0.0) throw ConfigError("weights must be >= 0");
        any_weight = any_weight || w > 0.0;
    }
    if (!any_weight) throw ConfigError("at least one weight must be > 0");
    if (beta_iu < 0.0 || beta_ai < 0.0 || beta_au < 0.0)
        throw ConfigError("Rician factors must be >= 0");
    for (double r : {r_rk, r_r, r_d})
        if (r < 0.0 || r >= 1.0)
            throw ConfigError("correlation coefficients must lie in [0,1)");
    if (c0 <= 0.0) throw ConfigError("pathloss.c0 must be > 0");
    for (double d : dist_ap_irs)
        if (d <= 0.0) throw ConfigError("AP-IRS distances must be > 0");
    for (const auto& row : dist_irs_user)
        for (double d : row)
            if (d <= 0.0) throw ConfigError("IRS-user distances must be > 0");
    for (double d : dist_ap_user)
        if (d <= 0.0) throw ConfigError("AP-user distances must be > 0");
    if (iters < 1) throw ConfigError("iters must be >= 1");
    if (wmmse_iters < 1) throw ConfigError("wmmse.iters must be >= 1");
    if (mu <= 0.0) throw ConfigError("mu must be > 0");
    if (thin < 1) throw ConfigError("trajectory.thin must be >= 1");
    if (schedule.gamma <= 0.0 || schedule.gamma > 1.0)
        throw ConfigError("schedule.gamma must lie in (0,1]");
    if (schedule.cutoff < 0) throw ConfigError("schedule.cutoff must be >= 0");
    for (double v : {schedule.delta_phi, schedule.rho, schedule.b_f,
                     schedule.l_h0, schedule.l_h1, schedule.delta_k})
        if (v <= 0.0) throw ConfigError("schedule constants must be > 0");
    if (schedule.eta0_phase < 0.0 || schedule.eta0_amp < 0.0)
        throw ConfigError("initial step sizes must be >= 0");
}

inline std::map<std::string, std::string> Scenario::canonical() const {
    using detail::format_double;
    std::map<std::string, std::string> kv;
    kv["antennas"] = std::to_string(num_antennas);
    kv["users"] = std::to_string(num_users);
    kv["power_w"] = format_double(power);
    for (int k = 0; k < num_users; ++k)
        kv["noise." + std::to_string(k) + ".w"] = format_double(noise[k]);
    for (int k = 0; k < num_users; ++k)
        kv["weight." + std::to_string(k)] = format_double(weights[k]);
    kv["amplitude_mode"] = to_string(amplitude_mode);
    kv["rician.beta_iu"] = format_double(beta_iu);
    kv["rician.beta_ai"] = format_double(beta_ai);
    kv["rician.beta_au"] = format_double(beta_au);
    kv["corr.r_rk"] = format_double(r_rk);
    kv["corr.r_r"] = format_double(r_r);
    kv["corr.r_d"] = format_double(r_d);
    kv["pathloss.c0"] = format_double(c0);
    kv["pathloss.ap_irs.alpha"] = format_double(alpha_ap_irs);
    kv["pathloss.irs_user.alpha"] = format_double(alpha_irs_user);
    kv["pathloss.ap_user.alpha"] = format_double(alpha_ap_user);
    for (size_t i = 0; i < irs.size(); ++i) {
        const std::string p = "irs." + std::to_string(i) + ".";
        kv[p + "nh"] = std::to_string(irs[i].nh);
        kv[p + "nv"] = std::to_string(irs[i].nv);
        kv[p + "optimize"] = irs[i].optimize ? "true" : "false";
        kv["dist.ap_irs." + std::to_string(i)] = format_double(dist_ap_irs[i]);
        for (int k = 0; k < num_users; ++k)
            kv["dist.irs_user." + std::to_string(i) + "." + std::to_string(k)] =
                format_double(dist_irs_user[i][k]);
    }
    for (int k = 0; k < num_users; ++k)
        kv["dist.ap_user." + std::to_string(k)] = format_double(dist_ap_user[k]);
    kv["iters"] = std::to_string(iters);
    kv["wmmse.iters"] = std::to_string(wmmse_iters);
    kv["mu"] = format_double(mu);
    kv["phase_wrap"] = phase_wrap ? "true" : "false";
    kv["trajectory.thin"] = std::to_string(thin);
    kv["schedule.mode"] = schedule.mode == ScheduleMode::geometric_decay
                              ? "geometric_decay"
                              : "constant_theorem1";
    kv["schedule.eta_phase"] = format_double(schedule.eta0_phase);
    kv["schedule.eta_amp"] = format_double(schedule.eta0_amp);
    kv["schedule.gamma"] = format_double(schedule.gamma);
    kv["schedule.cutoff"] = std::to_string(schedule.cutoff);
    kv["schedule.delta_phi"] = format_double(schedule.delta_phi);
    kv["schedule.rho"] = format_double(schedule.rho);
    kv["schedule.b_f"] = format_double(schedule.b_f);
    kv["schedule.l_h0"] = format_double(schedule.l_h0);
    kv["schedule.l_h1"] = format_double(schedule.l_h1);
    kv["schedule.delta_k"] = format_double(schedule.delta_k);
    return kv;
}

inline std::string Scenario::canonical_text() const {
    std::string out;
    for (const auto& [k, v] : canonical()) {
        out += k;
        out += '=';
        out += v;
        out += '\n';
    }
    return out;
}

inline std::string Scenario::hash() const {
    // FNV-1a 64 over the canonical serialization
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : canonical_text()) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace zosga
