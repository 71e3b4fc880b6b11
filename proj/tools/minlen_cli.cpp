#include "minlen.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <fmt/core.h>
#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

using json = nlohmann::ordered_json;

namespace {

enum ExitCode { exit_ok = 0, exit_internal = 1, exit_config = 2, exit_numerical = 3, exit_validation = 4 };

struct CliError {
    int code;
    std::string kind;
    std::string message;
};

[[noreturn]] void config_error(const std::string& message) { throw CliError{exit_config, "config", message}; }

void check(minlen_status s) {
    if (s == MINLEN_OK) return;
    int code = exit_internal;
    switch (s) {
    case MINLEN_ERR_NULL_ARGUMENT:
    case MINLEN_ERR_DOMAIN:
    case MINLEN_ERR_USAGE:
    case MINLEN_ERR_INSENSITIVE:
    case MINLEN_ERR_OUT_OF_RANGE: code = exit_config; break;
    case MINLEN_ERR_NUMERICAL:
    case MINLEN_ERR_NO_BOUND_STATE: code = exit_numerical; break;
    default: break;
    }
    throw CliError{code, minlen_status_name(s), minlen_last_error()};
}

template <class T, void (*Free)(T*)>
struct Deleter {
    void operator()(T* p) const { Free(p); }
};
using SystemPtr = std::unique_ptr<minlen_system, Deleter<minlen_system, minlen_system_free>>;
using SpectrumPtr = std::unique_ptr<minlen_spectrum, Deleter<minlen_spectrum, minlen_spectrum_free>>;
using BlocksPtr = std::unique_ptr<minlen_blocks, Deleter<minlen_blocks, minlen_blocks_free>>;
using StatePtr = std::unique_ptr<minlen_state, Deleter<minlen_state, minlen_state_free>>;
using ReportPtr = std::unique_ptr<minlen_report, Deleter<minlen_report, minlen_report_free>>;

// Every flag is optional so a config file can fill the gaps; flags win.
struct Flags {
    std::optional<std::string> system;
    std::optional<double> beta;
    std::optional<double> delta_x0_fm;
    std::optional<int> n_max;
    std::optional<int> l_max;
    std::optional<std::string> method;
    std::optional<std::string> output;
    std::optional<std::string> potential_file;
    std::optional<double> precision_ev;
    std::optional<double> precision_khz;
    std::optional<double> excitation_gev;
    std::optional<double> excitation_mev;
    std::optional<double> mass_ev;
    std::optional<double> omega_ev;
    std::optional<double> alpha;
    std::optional<double> length_scale_fm;
    std::optional<int> n;
    std::optional<int> l;
    std::optional<int> grid_points;
    std::optional<double> r_min_fm;
    std::optional<double> r_max_fm;
    std::optional<std::string> level_a;
    std::optional<std::string> level_b;
    std::optional<int> quadrature_points;
    std::optional<double> inject_beta2;
    std::optional<bool> wavefunction;
};

template <class T>
void overlay(std::optional<T>& dst, const std::optional<T>& src) {
    if (src) dst = src;
}

Flags merge(Flags base, const Flags& f) {
    if (f.beta || f.delta_x0_fm) {
        base.beta.reset();
        base.delta_x0_fm.reset();
    }
    if (f.precision_ev || f.precision_khz) {
        base.precision_ev.reset();
        base.precision_khz.reset();
    }
    overlay(base.system, f.system);
    overlay(base.beta, f.beta);
    overlay(base.delta_x0_fm, f.delta_x0_fm);
    overlay(base.n_max, f.n_max);
    overlay(base.l_max, f.l_max);
    overlay(base.method, f.method);
    overlay(base.output, f.output);
    overlay(base.potential_file, f.potential_file);
    overlay(base.precision_ev, f.precision_ev);
    overlay(base.precision_khz, f.precision_khz);
    overlay(base.excitation_gev, f.excitation_gev);
    overlay(base.excitation_mev, f.excitation_mev);
    overlay(base.mass_ev, f.mass_ev);
    overlay(base.omega_ev, f.omega_ev);
    overlay(base.alpha, f.alpha);
    overlay(base.length_scale_fm, f.length_scale_fm);
    overlay(base.n, f.n);
    overlay(base.l, f.l);
    overlay(base.grid_points, f.grid_points);
    overlay(base.r_min_fm, f.r_min_fm);
    overlay(base.r_max_fm, f.r_max_fm);
    overlay(base.level_a, f.level_a);
    overlay(base.level_b, f.level_b);
    overlay(base.quadrature_points, f.quadrature_points);
    overlay(base.inject_beta2, f.inject_beta2);
    overlay(base.wavefunction, f.wavefunction);
    return base;
}

template <class T>
void read_key(const json& j, const std::string& key, std::optional<T>& dst) {
    try {
        dst = j.get<T>();
    } catch (const json::exception&) {
        config_error("config key '" + key + "' has the wrong type");
    }
}

Flags load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) config_error("cannot open config file: " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        config_error(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) config_error("config file must hold a JSON object");
    Flags f;
    for (const auto& [raw, value] : doc.items()) {
        std::string key = raw;
        std::replace(key.begin(), key.end(), '-', '_');
        if (key == "system") read_key(value, raw, f.system);
        else if (key == "beta") read_key(value, raw, f.beta);
        else if (key == "delta_x0_fm") read_key(value, raw, f.delta_x0_fm);
        else if (key == "n_max") read_key(value, raw, f.n_max);
        else if (key == "l_max") read_key(value, raw, f.l_max);
        else if (key == "method") read_key(value, raw, f.method);
        else if (key == "output") read_key(value, raw, f.output);
        else if (key == "potential_file") read_key(value, raw, f.potential_file);
        else if (key == "precision_ev") read_key(value, raw, f.precision_ev);
        else if (key == "precision_khz") read_key(value, raw, f.precision_khz);
        else if (key == "excitation_gev") read_key(value, raw, f.excitation_gev);
        else if (key == "excitation_mev") read_key(value, raw, f.excitation_mev);
        else if (key == "mass_ev") read_key(value, raw, f.mass_ev);
        else if (key == "omega_ev") read_key(value, raw, f.omega_ev);
        else if (key == "alpha") read_key(value, raw, f.alpha);
        else if (key == "length_scale_fm") read_key(value, raw, f.length_scale_fm);
        else if (key == "n") read_key(value, raw, f.n);
        else if (key == "l") read_key(value, raw, f.l);
        else if (key == "grid_points") read_key(value, raw, f.grid_points);
        else if (key == "r_min_fm") read_key(value, raw, f.r_min_fm);
        else if (key == "r_max_fm") read_key(value, raw, f.r_max_fm);
        else if (key == "level_a") read_key(value, raw, f.level_a);
        else if (key == "level_b") read_key(value, raw, f.level_b);
        else if (key == "quadrature_points") read_key(value, raw, f.quadrature_points);
        else if (key == "inject_beta2") read_key(value, raw, f.inject_beta2);
        else if (key == "wavefunction") read_key(value, raw, f.wavefunction);
        else config_error("unknown config key '" + raw + "'");
    }
    if (f.beta && f.delta_x0_fm) config_error("config sets both beta and delta_x0_fm");
    if (f.precision_ev && f.precision_khz) config_error("config sets both precision_ev and precision_khz");
    return f;
}

enum class Output { Table, Json, Csv };

Output parse_output(const std::optional<std::string>& s) {
    if (!s || *s == "table") return Output::Table;
    if (*s == "json") return Output::Json;
    if (*s == "csv") return Output::Csv;
    config_error("output must be table, json or csv");
}

std::string num(double v) { return fmt::format("{:.17g}", v); }

const char* method_name(minlen_method m) {
    return m == MINLEN_METHOD_ANALYTIC ? "analytic" : m == MINLEN_METHOD_NUMERICAL ? "numerical" : "both";
}

std::string spectroscopic(int n, int l) {
    static const std::string letters = "spdfghiklmnoqrtuv";
    std::string s = std::to_string(n);
    s += l < static_cast<int>(letters.size()) ? static_cast<char>(std::toupper(letters[l])) : '?';
    return s;
}

std::pair<int, int> parse_level(const std::string& text) {
    static const std::string letters = "spdfghiklmnoqrtuv";
    size_t i = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == 0 || i + 1 != text.size()) config_error("level must look like 1S or 2P, got '" + text + "'");
    auto pos = letters.find(static_cast<char>(std::tolower(static_cast<unsigned char>(text[i]))));
    if (pos == std::string::npos) config_error("unknown orbital letter in '" + text + "'");
    return {std::stoi(text.substr(0, i)), static_cast<int>(pos)};
}

struct Context {
    Flags cfg;
    Output output = Output::Table;
    std::string system_name;
    minlen_system_kind kind = MINLEN_SYSTEM_HYDROGEN;
    SystemPtr system;
};

std::string resolve_system_name(const Flags& cfg) {
    std::string s = cfg.system.value_or(cfg.potential_file ? "tabulated" : "hydrogen");
    if (s == "custom") s = "tabulated";
    if (s != "hydrogen" && s != "oscillator" && s != "tabulated")
        config_error("system must be hydrogen, oscillator or tabulated (custom)");
    return s;
}

void build_system(Context& ctx) {
    const auto& c = ctx.cfg;
    minlen_constants k;
    minlen_get_constants(&k);
    minlen_system* raw = nullptr;
    ctx.system_name = resolve_system_name(c);
    if (ctx.system_name == "hydrogen") {
        check(minlen_system_hydrogen(c.mass_ev.value_or(k.electron_mass_ev), c.alpha.value_or(k.fine_structure), &raw));
        ctx.kind = MINLEN_SYSTEM_HYDROGEN;
    } else if (ctx.system_name == "oscillator") {
        check(minlen_system_oscillator(c.mass_ev.value_or(k.electron_mass_ev), c.omega_ev.value_or(1.0), &raw));
        ctx.kind = MINLEN_SYSTEM_OSCILLATOR;
    } else {
        if (!c.potential_file) config_error("tabulated system needs --potential-file");
        check(minlen_system_tabulated_file(c.potential_file->c_str(), c.mass_ev.value_or(k.electron_mass_ev),
                                           c.length_scale_fm.value_or(0.0), &raw));
        ctx.kind = MINLEN_SYSTEM_TABULATED;
    }
    ctx.system.reset(raw);
}

struct Deformation {
    double beta = 0.0;
    double delta_x0_fm = 0.0;
};

Deformation resolve_deformation(const Flags& c, bool required) {
    Deformation d;
    if (c.beta) {
        d.beta = *c.beta;
        check(minlen_delta_x0_fm_from_beta(d.beta, &d.delta_x0_fm));
    } else if (c.delta_x0_fm) {
        d.delta_x0_fm = *c.delta_x0_fm;
        check(minlen_beta_from_delta_x0_fm(d.delta_x0_fm, &d.beta));
    } else if (required) {
        config_error("supply exactly one of --beta or --delta-x0-fm");
    }
    return d;
}

minlen_method resolve_method(const Context& ctx) {
    if (!ctx.cfg.method) return ctx.kind == MINLEN_SYSTEM_TABULATED ? MINLEN_METHOD_NUMERICAL : MINLEN_METHOD_ANALYTIC;
    const auto& m = *ctx.cfg.method;
    if (m == "analytic") return MINLEN_METHOD_ANALYTIC;
    if (m == "numerical") return MINLEN_METHOD_NUMERICAL;
    if (m == "both") return MINLEN_METHOD_BOTH;
    config_error("method must be analytic, numerical or both");
}

int resolve_n_max(const Context& ctx) { return ctx.cfg.n_max.value_or(3); }

int resolve_l_max(const Context& ctx, int n_max) {
    if (ctx.cfg.l_max) return *ctx.cfg.l_max;
    switch (ctx.kind) {
    case MINLEN_SYSTEM_HYDROGEN: return std::clamp(n_max - 1, 0, 20);
    case MINLEN_SYSTEM_OSCILLATOR: return std::clamp(n_max, 0, 20);
    default: return 0;
    }
}

json deformation_json(const Deformation& d) { return {{"beta_ev2", d.beta}, {"delta_x0_fm", d.delta_x0_fm}}; }

int cmd_spectrum(Context& ctx) {
    build_system(ctx);
    auto d = resolve_deformation(ctx.cfg, true);
    auto method = resolve_method(ctx);
    int n_max = resolve_n_max(ctx);
    int l_max = resolve_l_max(ctx, n_max);

    minlen_spectrum* raw = nullptr;
    check(minlen_spectrum_compute(ctx.system.get(), d.beta, n_max, l_max, method, &raw));
    SpectrumPtr spectrum(raw);
    std::vector<minlen_spectrum_row> rows(minlen_spectrum_size(raw));
    for (size_t i = 0; i < rows.size(); ++i) check(minlen_spectrum_row_at(raw, i, &rows[i]));
    const bool both = method == MINLEN_METHOD_BOTH;

    if (ctx.output == Output::Json) {
        json out = {{"command", "spectrum"}, {"system", ctx.system_name}, {"method", method_name(method)}};
        out["deformation"] = deformation_json(d);
        out["n_max"] = n_max;
        out["l_max"] = l_max;
        json arr = json::array();
        for (const auto& r : rows) {
            json row = {{"n", r.level.n},
                        {"l", r.level.l},
                        {"multiplicity", r.level.multiplicity},
                        {"e0_ev", r.level.e0_ev},
                        {"delta_e_ev", r.level.delta_e_ev},
                        {"e_total_ev", r.level.e_total_ev},
                        {"method", method_name(r.method)}};
            if (r.has_discrepancy) {
                row["e0_rel_discrepancy"] = r.e0_rel_discrepancy;
                row["delta_e_rel_discrepancy"] = r.delta_e_rel_discrepancy;
            }
            arr.push_back(std::move(row));
        }
        out["rows"] = std::move(arr);
        std::cout << out.dump(2) << '\n';
    } else if (ctx.output == Output::Csv) {
        std::cout << "n,l,multiplicity,e0_ev,delta_e_ev,e_total_ev,method";
        if (both) std::cout << ",e0_rel_discrepancy,delta_e_rel_discrepancy";
        std::cout << '\n';
        for (const auto& r : rows) {
            std::cout << fmt::format("{},{},{},{},{},{},{}", r.level.n, r.level.l, r.level.multiplicity,
                                     num(r.level.e0_ev), num(r.level.delta_e_ev), num(r.level.e_total_ev),
                                     method_name(r.method));
            if (both) {
                if (r.has_discrepancy)
                    std::cout << ',' << num(r.e0_rel_discrepancy) << ',' << num(r.delta_e_rel_discrepancy);
                else
                    std::cout << ",,";
            }
            std::cout << '\n';
        }
    } else {
        std::cout << fmt::format("# {} spectrum, beta = {:.6g} eV^-2, delta_x0 = {:.6g} fm\n", ctx.system_name,
                                 d.beta, d.delta_x0_fm);
        std::cout << fmt::format("{:>3} {:>3} {:>4} {:>22} {:>22} {:>22} {:>10}", "n", "l", "mult", "E0 [eV]",
                                 "dE [eV]", "E [eV]", "method");
        if (both) std::cout << fmt::format(" {:>12} {:>12}", "rel dE0", "rel dShift");
        std::cout << '\n';
        for (const auto& r : rows) {
            std::cout << fmt::format("{:>3} {:>3} {:>4} {:>22.15g} {:>22.15g} {:>22.15g} {:>10}", r.level.n,
                                     r.level.l, r.level.multiplicity, r.level.e0_ev, r.level.delta_e_ev,
                                     r.level.e_total_ev, method_name(r.method));
            if (both && r.has_discrepancy)
                std::cout << fmt::format(" {:>12.3e} {:>12.3e}", r.e0_rel_discrepancy, r.delta_e_rel_discrepancy);
            std::cout << '\n';
        }
    }
    return exit_ok;
}

int cmd_splittings(Context& ctx) {
    build_system(ctx);
    auto d = resolve_deformation(ctx.cfg, true);
    auto method = resolve_method(ctx);
    if (method == MINLEN_METHOD_BOTH) config_error("splittings takes --method analytic or numerical");
    int n_max = resolve_n_max(ctx);
    int l_max = resolve_l_max(ctx, n_max);

    minlen_blocks* raw = nullptr;
    check(minlen_blocks_compute(ctx.system.get(), d.beta, n_max, l_max, method, &raw));
    BlocksPtr blocks(raw);

    struct Block {
        minlen_block_info info;
        std::vector<std::pair<double, int>> distinct;
        std::vector<minlen_block_member> members;
    };
    std::vector<Block> list(minlen_blocks_count(raw));
    for (size_t i = 0; i < list.size(); ++i) {
        check(minlen_blocks_info(raw, i, &list[i].info));
        for (int j = 0; j < list[i].info.f; ++j) {
            double v = 0.0;
            int c = 0;
            check(minlen_blocks_distinct(raw, i, static_cast<size_t>(j), &v, &c));
            list[i].distinct.emplace_back(v, c);
        }
        list[i].members.resize(static_cast<size_t>(list[i].info.g));
        for (int j = 0; j < list[i].info.g; ++j) check(minlen_blocks_member(raw, i, static_cast<size_t>(j), &list[i].members[j]));
    }
    std::vector<std::string> warnings;
    for (size_t i = 0; i < minlen_blocks_warning_count(raw); ++i) warnings.emplace_back(minlen_blocks_warning(raw, i));
    for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';

    if (ctx.output == Output::Json) {
        json out = {{"command", "splittings"}, {"system", ctx.system_name}, {"method", method_name(method)}};
        out["deformation"] = deformation_json(d);
        json arr = json::array();
        for (const auto& b : list) {
            json shifts = json::array();
            for (const auto& [v, c] : b.distinct) shifts.push_back({{"delta_e_ev", v}, {"count", c}});
            json members = json::array();
            for (const auto& m : b.members) members.push_back({{"n", m.n}, {"l", m.l}, {"m", m.m}});
            arr.push_back({{"e0_ev", b.info.e0_ev},
                           {"g", b.info.g},
                           {"f", b.info.f},
                           {"shifts", std::move(shifts)},
                           {"members", std::move(members)}});
        }
        out["blocks"] = std::move(arr);
        out["warnings"] = warnings;
        std::cout << out.dump(2) << '\n';
    } else if (ctx.output == Output::Csv) {
        std::cout << "block,e0_ev,g,f,delta_e_ev,count\n";
        for (size_t i = 0; i < list.size(); ++i)
            for (const auto& [v, c] : list[i].distinct)
                std::cout << fmt::format("{},{},{},{},{},{}\n", i, num(list[i].info.e0_ev), list[i].info.g,
                                         list[i].info.f, num(v), c);
    } else {
        std::cout << fmt::format("# {} degenerate blocks, beta = {:.6g} eV^-2, delta_x0 = {:.6g} fm\n",
                                 ctx.system_name, d.beta, d.delta_x0_fm);
        for (const auto& b : list) {
            std::string levels;
            std::pair<int, int> last{-1, -1};
            for (const auto& m : b.members) {
                if (std::make_pair(m.n, m.l) == last) continue;
                last = {m.n, m.l};
                levels += fmt::format("{}({},{})", levels.empty() ? "" : " ", m.n, m.l);
            }
            std::cout << fmt::format("E0 = {:.15g} eV  g = {}  f = {}  levels {}\n", b.info.e0_ev, b.info.g, b.info.f,
                                     levels);
            for (const auto& [v, c] : b.distinct) std::cout << fmt::format("    dE = {:.15g} eV  x{}\n", v, c);
        }
    }
    return exit_ok;
}

struct BoundEntry {
    std::string label;
    double precision_ev;
    double delta_x0_fm;
    double beta;
};

int cmd_bound(Context& ctx) {
    const auto& c = ctx.cfg;
    const bool excitation = c.excitation_gev || c.excitation_mev;
    const bool precision_given = c.precision_ev || c.precision_khz;
    const bool transition = !excitation || precision_given || c.level_a || c.level_b;

    json out = {{"command", "bound"}};
    std::string text;
    std::string csv = "kind,label,input_ev,delta_x0_max_fm,beta_ev2\n";

    if (transition) {
        build_system(ctx);
        if (ctx.kind != MINLEN_SYSTEM_HYDROGEN) config_error("transition bounds need --system hydrogen");
        auto [na, la] = parse_level(c.level_a.value_or("1S"));
        auto [nb, lb] = parse_level(c.level_b.value_or("2S"));
        double khz_ev = 0.0;
        check(minlen_frequency_to_energy(1.0, &khz_ev));

        auto entry = [&](const std::string& label, double precision) {
            BoundEntry e{label, precision, 0.0, 0.0};
            check(minlen_transition_bound(ctx.system.get(), na, la, nb, lb, precision, &e.delta_x0_fm));
            check(minlen_beta_from_delta_x0_fm(e.delta_x0_fm, &e.beta));
            return e;
        };

        BoundEntry requested = [&] {
            if (c.precision_khz) {
                double ev = 0.0;
                check(minlen_frequency_to_energy(*c.precision_khz, &ev));
                return entry(fmt::format("{:g} kHz", *c.precision_khz), ev);
            }
            double ev = c.precision_ev.value_or(1e-12);
            return entry(fmt::format("{:g} eV", ev), ev);
        }();
        std::vector<BoundEntry> presets{entry("1e-12 eV", 1e-12), entry("1 kHz", khz_ev)};

        const std::string la_s = spectroscopic(na, la), lb_s = spectroscopic(nb, lb);
        json t = {{"level_a", la_s},
                  {"level_b", lb_s},
                  {"precision_ev", requested.precision_ev},
                  {"delta_x0_max_fm", requested.delta_x0_fm},
                  {"beta_ev2", requested.beta}};
        json p = json::array();
        for (const auto& e : presets)
            p.push_back({{"label", e.label},
                         {"precision_ev", e.precision_ev},
                         {"delta_x0_max_fm", e.delta_x0_fm},
                         {"beta_ev2", e.beta}});
        t["presets"] = std::move(p);
        out["transition"] = std::move(t);

        text += fmt::format("{}-{} transition bound\n", la_s, lb_s);
        text += fmt::format("  precision {:<10} ({:.6g} eV): delta_x0 <= {:.6g} fm, beta <= {:.6g} eV^-2\n",
                            requested.label, requested.precision_ev, requested.delta_x0_fm, requested.beta);
        for (const auto& e : presets)
            text += fmt::format("  preset    {:<10} ({:.6g} eV): delta_x0 <= {:.6g} fm, beta <= {:.6g} eV^-2\n",
                                e.label, e.precision_ev, e.delta_x0_fm, e.beta);
        csv += fmt::format("transition,requested,{},{},{}\n", num(requested.precision_ev), num(requested.delta_x0_fm),
                           num(requested.beta));
        for (const auto& e : presets)
            csv += fmt::format("transition,{},{},{},{}\n", e.label, num(e.precision_ev), num(e.delta_x0_fm),
                               num(e.beta));
    }

    if (excitation) {
        json arr = json::array();
        auto add = [&](const std::string& label, double ev) {
            BoundEntry e{label, ev, 0.0, 0.0};
            check(minlen_excitation_bound(ev, &e.delta_x0_fm));
            check(minlen_beta_from_delta_x0_fm(e.delta_x0_fm, &e.beta));
            arr.push_back({{"label", label},
                           {"threshold_ev", ev},
                           {"delta_x0_max_fm", e.delta_x0_fm},
                           {"beta_ev2", e.beta}});
            text += fmt::format("excitation threshold {}: delta_x0 <= {:.6g} fm, beta <= {:.6g} eV^-2\n", label,
                                e.delta_x0_fm, e.beta);
            csv += fmt::format("excitation,{},{},{},{}\n", label, num(ev), num(e.delta_x0_fm), num(e.beta));
        };
        if (c.excitation_gev) add(fmt::format("{:g} GeV", *c.excitation_gev), *c.excitation_gev * 1e9);
        if (c.excitation_mev) add(fmt::format("{:g} MeV", *c.excitation_mev), *c.excitation_mev * 1e6);
        out["excitation"] = std::move(arr);
    }

    if (ctx.output == Output::Json) std::cout << out.dump(2) << '\n';
    else if (ctx.output == Output::Csv) std::cout << csv;
    else std::cout << text;
    return exit_ok;
}

int cmd_solve(Context& ctx) {
    build_system(ctx);
    const auto& c = ctx.cfg;
    auto d = resolve_deformation(c, false);
    int n = c.n.value_or(0);
    int l = c.l.value_or(0);

    std::optional<minlen_grid> grid;
    if (c.grid_points || c.r_min_fm || c.r_max_fm) {
        if (!(c.r_min_fm && c.r_max_fm)) config_error("custom grids need both --r-min-fm and --r-max-fm");
        minlen_grid g{0.0, 0.0, c.grid_points.value_or(4000), MINLEN_SPACING_LOG_UNIFORM};
        check(minlen_length_to_natural(*c.r_min_fm, &g.r_min));
        check(minlen_length_to_natural(*c.r_max_fm, &g.r_max));
        grid = g;
    }

    minlen_system_kind kind = ctx.kind;
    minlen_state* raw = nullptr;
    check(minlen_solve(ctx.system.get(), n, l, grid ? &*grid : nullptr, &raw));
    StatePtr state(raw);
    minlen_state_info info;
    check(minlen_state_get_info(raw, &info));

    double mass = 0.0;
    {
        minlen_constants k;
        minlen_get_constants(&k);
        mass = c.mass_ev.value_or(k.electron_mass_ev);
    }
    const double shift = minlen_diagonal_shift(info.e0_ev, info.expectation_v_ev, info.expectation_v2_ev2, d.beta, mass);
    const int n_reported = kind == MINLEN_SYSTEM_HYDROGEN ? n + l + 1 : n;

    std::vector<std::pair<double, double>> samples;
    if (c.wavefunction.value_or(false)) {
        samples.reserve(info.samples);
        for (size_t i = 0; i < info.samples; ++i) {
            double r = 0.0, u = 0.0, r_fm = 0.0;
            check(minlen_state_sample(raw, i, &r, &u));
            check(minlen_natural_to_length(r, &r_fm));
            samples.emplace_back(r_fm, u);
        }
    }

    if (ctx.output == Output::Json) {
        json out = {{"command", "solve"},
                    {"system", ctx.system_name},
                    {"n_radial", info.n_radial},
                    {"n", n_reported},
                    {"l", info.l},
                    {"e0_ev", info.e0_ev},
                    {"expectation_v_ev", info.expectation_v_ev},
                    {"expectation_v2_ev2", info.expectation_v2_ev2}};
        out["deformation"] = deformation_json(d);
        out["delta_e_ev"] = shift;
        out["e_total_ev"] = info.e0_ev + shift;
        out["diagnostics"] = {{"nodes", info.nodes},
                              {"iterations", info.iterations},
                              {"norm_residual", info.norm_residual},
                              {"tail_ratio", info.tail_ratio},
                              {"points_per_wavelength", info.points_per_wavelength},
                              {"samples", info.samples}};
        if (!samples.empty()) {
            json arr = json::array();
            for (const auto& [r, u] : samples) arr.push_back({r, u});
            out["wavefunction_r_fm_u"] = std::move(arr);
        }
        std::cout << out.dump(2) << '\n';
    } else if (ctx.output == Output::Csv) {
        if (samples.empty()) {
            std::cout << "n_radial,l,e0_ev,expectation_v_ev,expectation_v2_ev2,delta_e_ev,nodes,norm_residual,tail_ratio\n";
            std::cout << fmt::format("{},{},{},{},{},{},{},{},{}\n", info.n_radial, info.l, num(info.e0_ev),
                                     num(info.expectation_v_ev), num(info.expectation_v2_ev2), num(shift), info.nodes,
                                     num(info.norm_residual), num(info.tail_ratio));
        } else {
            std::cout << "r_fm,u\n";
            for (const auto& [r, u] : samples) std::cout << num(r) << ',' << num(u) << '\n';
        }
    } else {
        std::cout << fmt::format("# {} bound state, radial nodes {}, l = {}\n", ctx.system_name, info.n_radial, info.l);
        std::cout << fmt::format("E0        = {:.15g} eV\n", info.e0_ev);
        std::cout << fmt::format("<V>       = {:.15g} eV\n", info.expectation_v_ev);
        std::cout << fmt::format("<V^2>     = {:.15g} eV^2\n", info.expectation_v2_ev2);
        std::cout << fmt::format("dE        = {:.15g} eV (beta = {:.6g} eV^-2)\n", shift, d.beta);
        std::cout << fmt::format("nodes {}  iterations {}  norm residual {:.2e}  tail {:.2e}  points/wavelength {:.1f}\n",
                                 info.nodes, info.iterations, info.norm_residual, info.tail_ratio,
                                 info.points_per_wavelength);
        for (const auto& [r, u] : samples) std::cout << fmt::format("{:.10e} {:.10e}\n", r, u);
    }
    return exit_ok;
}

int cmd_validate(Context& ctx) {
    minlen_validation_options opts{ctx.cfg.quadrature_points.value_or(0), ctx.cfg.inject_beta2.value_or(0.0)};
    minlen_report* raw = nullptr;
    check(minlen_validate_run(&opts, &raw));
    ReportPtr report(raw);
    std::vector<minlen_check> checks(minlen_report_size(raw));
    for (size_t i = 0; i < checks.size(); ++i) check(minlen_report_check(raw, i, &checks[i]));
    const bool ok = minlen_report_all_passed(raw) != 0;

    if (ctx.output == Output::Json) {
        json arr = json::array();
        for (const auto& k : checks)
            arr.push_back({{"name", k.name},
                           {"description", k.description},
                           {"comparison", k.at_least ? ">=" : "<="},
                           {"tolerance", k.tolerance},
                           {"observed", k.observed},
                           {"passed", k.passed != 0},
                           {"note", k.note}});
        json out = {{"command", "validate"}, {"all_passed", ok}, {"checks", std::move(arr)}};
        std::cout << out.dump(2) << '\n';
    } else if (ctx.output == Output::Csv) {
        std::cout << "name,comparison,tolerance,observed,passed\n";
        for (const auto& k : checks)
            std::cout << fmt::format("{},{},{},{},{}\n", k.name, k.at_least ? ">=" : "<=", num(k.tolerance),
                                     num(k.observed), k.passed ? "true" : "false");
    } else {
        for (const auto& k : checks) {
            std::cout << fmt::format("{} {:<36} observed {:.3e} {} {:.1e}  {}", k.passed ? "PASS" : "FAIL", k.name,
                                     k.observed, k.at_least ? ">=" : "<=", k.tolerance, k.description);
            if (k.note[0] != '\0') std::cout << " [" << k.note << ']';
            std::cout << '\n';
        }
        size_t passed = std::count_if(checks.begin(), checks.end(), [](const minlen_check& k) { return k.passed; });
        std::cout << fmt::format("{}/{} checks passed\n", passed, checks.size());
    }
    if (!ok) std::cerr << "validation failed\n";
    return ok ? exit_ok : exit_validation;
}

void add_common(CLI::App* sub, Flags& f, std::optional<std::string>& config) {
    sub->add_option("--config", config, "JSON file with default values for any flag");
    sub->add_option("--output", f.output, "table, json or csv")->check(CLI::IsMember({"table", "json", "csv"}));
}

void add_system(CLI::App* sub, Flags& f) {
    sub->add_option("--system", f.system, "hydrogen, oscillator or tabulated (custom)")
        ->check(CLI::IsMember({"hydrogen", "oscillator", "tabulated", "custom"}));
    sub->add_option("--potential-file", f.potential_file, "two-column `r_fm V_eV` table");
    sub->add_option("--mass-ev", f.mass_ev, "particle mass in eV (default electron)");
    sub->add_option("--omega-ev", f.omega_ev, "oscillator frequency in eV (default 1)");
    sub->add_option("--alpha", f.alpha, "Coulomb coupling (default fine-structure constant)");
    sub->add_option("--length-scale-fm", f.length_scale_fm, "grid length scale for tabulated potentials");
}

void add_deformation(CLI::App* sub, Flags& f) {
    auto* b = sub->add_option("--beta", f.beta, "deformation beta in eV^-2");
    auto* x = sub->add_option("--delta-x0-fm", f.delta_x0_fm, "minimal length in fm");
    b->excludes(x);
}

void add_ranges(CLI::App* sub, Flags& f) {
    sub->add_option("--n-max", f.n_max,
                    "hydrogen: max principal n; oscillator: max shell 2n+l; tabulated: max radial n (default 3)");
    sub->add_option("--l-max", f.l_max, "max l (default covers every level up to --n-max; 0 for tabulated)");
    sub->add_option("--method", f.method, "analytic, numerical or both")
        ->check(CLI::IsMember({"analytic", "numerical", "both"}));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"First-order minimal-length corrections to central-potential spectra"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(minlen_version()));

    Flags flags;
    std::optional<std::string> config_path;

    auto* spectrum = app.add_subcommand("spectrum", "corrected levels E0 + dE");
    auto* splittings = app.add_subcommand("splittings", "degenerate blocks and their split shifts");
    auto* bound = app.add_subcommand("bound", "upper bounds on the minimal length");
    auto* solve = app.add_subcommand("solve", "raw Numerov solve of one radial state");
    auto* validate = app.add_subcommand("validate", "built-in identity and route-equivalence checks");

    for (auto* sub : {spectrum, splittings}) {
        add_common(sub, flags, config_path);
        add_system(sub, flags);
        add_deformation(sub, flags);
        add_ranges(sub, flags);
    }

    add_common(bound, flags, config_path);
    add_system(bound, flags);
    auto* pev = bound->add_option("--precision-ev", flags.precision_ev, "transition precision in eV (default 1e-12)");
    auto* pkhz = bound->add_option("--precision-khz", flags.precision_khz, "transition precision as a frequency in kHz");
    pev->excludes(pkhz);
    bound->add_option("--level-a", flags.level_a, "first level, e.g. 1S (default)");
    bound->add_option("--level-b", flags.level_b, "second level, e.g. 2S (default)");
    bound->add_option("--excitation-gev", flags.excitation_gev, "excitation threshold in GeV");
    bound->add_option("--excitation-mev", flags.excitation_mev, "excitation threshold in MeV");

    add_common(solve, flags, config_path);
    add_system(solve, flags);
    add_deformation(solve, flags);
    solve->add_option("--n", flags.n, "radial node count (default 0)");
    solve->add_option("--l", flags.l, "orbital quantum number (default 0)");
    solve->add_option("--grid-points", flags.grid_points, "grid size (default 4000)");
    solve->add_option("--r-min-fm", flags.r_min_fm, "grid start in fm");
    solve->add_option("--r-max-fm", flags.r_max_fm, "grid end in fm");
    solve->add_flag("--wavefunction", flags.wavefunction, "also print u(r) samples");

    add_common(validate, flags, config_path);
    validate->add_option("--quadrature-points", flags.quadrature_points, "Gauss-Laguerre points (default 64)");
    validate->add_option("--inject-beta2", flags.inject_beta2, "debug: add a beta^2 term to one route");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_config;
    }

    Context ctx;
    try {
        ctx.cfg = config_path ? merge(load_config(*config_path), flags) : flags;
        ctx.output = parse_output(ctx.cfg.output);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << '\n';
        return e.code;
    }

    try {
        if (spectrum->parsed()) return cmd_spectrum(ctx);
        if (splittings->parsed()) return cmd_splittings(ctx);
        if (bound->parsed()) return cmd_bound(ctx);
        if (solve->parsed()) return cmd_solve(ctx);
        return cmd_validate(ctx);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << '\n';
        if (ctx.output == Output::Json) {
            json err = {{"error", {{"exit_code", e.code}, {"kind", e.kind}, {"message", e.message}}}};
            std::cout << err.dump(2) << '\n';
        }
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_internal;
    }
}
