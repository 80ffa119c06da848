#include "hcir/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <iterator>
#include <limits>

#include "hcir/errors.hpp"

namespace hcir {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// Numeric parsers insist on consuming the whole token so that trailing junk
// ("0.2x", "1 2") is a ParseError rather than a silently shortened read.
template <typename T>
T parse_number(std::string_view value, int line) {
    T out{};
    const char* first = value.data();
    const char* last = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last) {
        throw ParseError(line, "expected a number, got '" + std::string(value) + "'");
    }
    return out;
}

bool parse_bool(std::string_view value, int line) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ParseError(line, "expected true/false, got '" + std::string(value) + "'");
}

std::vector<double> parse_tuple(std::string_view value, std::size_t arity, int line) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= value.size()) {
        std::size_t comma = value.find(',', start);
        std::string_view field = comma == std::string_view::npos
                                     ? value.substr(start)
                                     : value.substr(start, comma - start);
        out.push_back(parse_number<double>(trim(field), line));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (out.size() != arity) {
        throw ParseError(line, "expected " + std::to_string(arity) + " comma-separated values, got " +
                                   std::to_string(out.size()));
    }
    return out;
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

McScheme scheme_from_string(std::string_view name, int line) {
    if (name == "full_truncation") return McScheme::full_truncation;
    if (name == "reflection") return McScheme::reflection;
    throw ParseError(line, "unknown mc_scheme '" + std::string(name) + "'");
}

McDrift drift_from_string(std::string_view name, int line) {
    if (name == "pde_consistent") return McDrift::pde_consistent;
    if (name == "sde_paper") return McDrift::sde_paper;
    throw ParseError(line, "unknown mc_drift '" + std::string(name) + "'");
}

struct Parser {
    RunConfig cfg;
    bool s_max_set = false;

    void assign(std::string_view section, std::string_view key, std::string_view value,
                int line) {
        if (section == "model") {
            double& slot = model_slot(key, line);
            slot = parse_number<double>(value, line);
        } else if (section == "option") {
            if (key == "strike") cfg.option.strike = parse_number<double>(value, line);
            else if (key == "maturity") cfg.option.maturity = parse_number<double>(value, line);
            else throw unknown_key(section, key, line);
        } else if (section == "costs") {
            if (key == "k0") cfg.costs.k0 = parse_number<double>(value, line);
            else if (key == "k1") cfg.costs.k1 = parse_number<double>(value, line);
            else if (key == "k2") cfg.costs.k2 = parse_number<double>(value, line);
            else if (key == "delta_t") cfg.costs.delta_t = parse_number<double>(value, line);
            else throw unknown_key(section, key, line);
        } else if (section == "grid") {
            if (key == "s_max") {
                cfg.grid.s_max = parse_number<double>(value, line);
                s_max_set = true;
            } else if (key == "v_max") cfg.grid.v_max = parse_number<double>(value, line);
            else if (key == "r_max") cfg.grid.r_max = parse_number<double>(value, line);
            else if (key == "m") cfg.grid.m = parse_number<int>(value, line);
            else if (key == "j") cfg.grid.j = parse_number<int>(value, line);
            else if (key == "k") cfg.grid.k = parse_number<int>(value, line);
            else if (key == "n") cfg.grid.n = parse_number<int>(value, line);
            else throw unknown_key(section, key, line);
        } else if (section == "solver") {
            if (key == "kind") cfg.solver = kind_from(value, line);
            else if (key == "theta1") cfg.douglas.theta1 = parse_number<double>(value, line);
            else if (key == "clamp_negative") cfg.douglas.clamp_negative = parse_bool(value, line);
            else if (key == "pivot_tol") cfg.douglas.pivot_tol = parse_number<double>(value, line);
            else if (key == "seed") cfg.seed = parse_number<std::uint64_t>(value, line);
            else if (key == "mc_paths") cfg.mc_paths = parse_number<long>(value, line);
            else if (key == "mc_steps") cfg.mc_steps = parse_number<int>(value, line);
            else if (key == "mc_scheme") cfg.mc_scheme = scheme_from_string(value, line);
            else if (key == "mc_drift") cfg.mc_drift = drift_from_string(value, line);
            else throw unknown_key(section, key, line);
        } else if (section == "queries") {
            if (key != "point") throw unknown_key(section, key, line);
            auto t = parse_tuple(value, 3, line);
            cfg.queries.push_back({t[0], t[1], t[2]});
        } else if (section == "anchors") {
            if (key != "anchor") throw unknown_key(section, key, line);
            auto t = parse_tuple(value, 4, line);
            cfg.anchors.push_back({t[0], t[1], t[2], t[3]});
        } else if (section == "ladder") {
            if (key != "rung") throw unknown_key(section, key, line);
            auto t = parse_tuple(value, 4, line);
            LadderRung rung;
            rung.m = static_cast<int>(t[0]);
            rung.j = static_cast<int>(t[1]);
            rung.k = static_cast<int>(t[2]);
            rung.n = static_cast<int>(t[3]);
            cfg.ladder.push_back(rung);
        } else if (section == "surface") {
            if (key == "r") cfg.surface.r = parse_number<double>(value, line);
            else if (key == "v") cfg.surface.v = parse_number<double>(value, line);
            else if (key == "payoff") cfg.surface.payoff = parse_bool(value, line);
            else throw unknown_key(section, key, line);
        } else if (section == "output") {
            if (key == "path") cfg.out_path = std::string(value);
            else throw unknown_key(section, key, line);
        } else {
            throw ParseError(line, "unknown section [" + std::string(section) + "]");
        }
    }

    double& model_slot(std::string_view key, int line) {
        if (key == "sigma") return cfg.model.sigma;
        if (key == "eta") return cfg.model.eta;
        if (key == "rho") return cfg.model.rho;
        if (key == "alpha") return cfg.model.alpha;
        if (key == "beta") return cfg.model.beta;
        if (key == "a") return cfg.model.a;
        if (key == "b") return cfg.model.b;
        if (key == "k") return cfg.model.k;
        if (key == "zeta") return cfg.model.zeta;
        if (key == "lambda") return cfg.model.lambda;
        throw unknown_key("model", key, line);
    }

    static SolverKind kind_from(std::string_view value, int line) {
        try {
            return solver_kind_from_string(value);
        } catch (const ValidationError&) {
            throw ParseError(line, "unknown solver kind '" + std::string(value) + "'");
        }
    }

    static ParseError unknown_key(std::string_view section, std::string_view key, int line) {
        return ParseError(line, "unknown key '" + std::string(key) + "' in section [" +
                                    std::string(section) + "]");
    }

    void finalize() {
        if (!s_max_set) cfg.grid.s_max = 5.0 * cfg.option.strike;
        if (cfg.queries.empty()) {
            cfg.queries = {{120.0, 0.2, 0.2}, {350.0, 0.2, 0.2}, {450.0, 0.2, 0.2}};
        }
        validate(cfg.model);
        validate(cfg.option);
        validate(cfg.costs);
        validate(cfg.grid);
        if (!(cfg.douglas.theta1 > 0.0) || cfg.douglas.theta1 > 1.0) {
            throw ValidationError("ThetaOutOfRange", "theta1",
                                  "theta1 must be in (0, 1], got " + fmt(cfg.douglas.theta1));
        }
        if (cfg.mc_paths < 1) {
            throw ValidationError("NonPositiveParameter", "mc_paths", "mc_paths must be >= 1");
        }
        if (cfg.mc_steps < 1) {
            throw ValidationError("NonPositiveParameter", "mc_steps", "mc_steps must be >= 1");
        }
        for (const QueryPoint& q : cfg.queries) check_in_domain(q.s, q.v, q.r, "queries");
        for (const AnchorPoint& p : cfg.anchors) check_in_domain(p.s, p.v, p.r, "anchors");
        for (const LadderRung& rung : cfg.ladder) {
            GridSpec spec = cfg.grid;
            spec.m = rung.m;
            spec.j = rung.j;
            spec.k = rung.k;
            spec.n = rung.n;
            validate(spec);
        }
    }

    void check_in_domain(double s, double v, double r, const char* field) const {
        const bool inside = s >= 0.0 && s <= cfg.grid.s_max && v >= 0.0 &&
                            v <= cfg.grid.v_max && r >= 0.0 && r <= cfg.grid.r_max;
        if (!inside) {
            throw ValidationError("QueryOutsideDomain", field,
                                  "point (" + fmt(s) + ", " + fmt(v) + ", " + fmt(r) +
                                      ") lies outside the grid box");
        }
    }
};

}  // namespace

std::string_view to_string(SolverKind kind) {
    switch (kind) {
        case SolverKind::adi: return "adi";
        case SolverKind::explicit_euler: return "explicit";
        case SolverKind::mc: return "mc";
    }
    return "adi";
}

SolverKind solver_kind_from_string(std::string_view name) {
    if (name == "adi") return SolverKind::adi;
    if (name == "explicit") return SolverKind::explicit_euler;
    if (name == "mc") return SolverKind::mc;
    throw ValidationError("UnknownSolver", "solver",
                          "solver must be adi, explicit, or mc; got '" + std::string(name) + "'");
}

McConfig RunConfig::mc_config() const {
    McConfig mc;
    mc.n_paths = mc_paths;
    mc.n_steps = mc_steps;
    mc.seed = seed;
    mc.scheme = mc_scheme;
    mc.drift = mc_drift;
    return mc;
}

RunConfig parse_config(std::string_view text) {
    Parser parser;
    std::string section;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = eol == std::string_view::npos ? text.substr(pos)
                                                              : text.substr(pos, eol - pos);
        ++line_no;
        if (std::size_t hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (!line.empty()) {
            if (line.front() == '[') {
                if (line.back() != ']' || line.size() < 3) {
                    throw ParseError(line_no, "malformed section header");
                }
                section = std::string(trim(line.substr(1, line.size() - 2)));
                static constexpr std::string_view kSections[] = {
                    "model", "option", "costs",  "grid",    "solver",
                    "queries", "anchors", "ladder", "surface", "output"};
                if (std::find(std::begin(kSections), std::end(kSections), section) ==
                    std::end(kSections)) {
                    throw ParseError(line_no, "unknown section [" + section + "]");
                }
            } else {
                std::size_t eq = line.find('=');
                if (eq == std::string_view::npos) {
                    throw ParseError(line_no, "expected key = value");
                }
                std::string_view key = trim(line.substr(0, eq));
                std::string_view value = trim(line.substr(eq + 1));
                if (key.empty()) throw ParseError(line_no, "empty key");
                if (section.empty()) {
                    throw ParseError(line_no, "key '" + std::string(key) +
                                                  "' appears before any [section] header");
                }
                parser.assign(section, key, value, line_no);
            }
        }
        if (eol == std::string_view::npos) break;
        pos = eol + 1;
    }
    parser.finalize();
    return parser.cfg;
}

std::string serialize_config(const RunConfig& c) {
    std::string out;
    auto put = [&out](std::string_view key, const std::string& value) {
        out += key;
        out += " = ";
        out += value;
        out += "\n";
    };

    out += "[model]\n";
    put("sigma", fmt(c.model.sigma));
    put("eta", fmt(c.model.eta));
    put("rho", fmt(c.model.rho));
    put("alpha", fmt(c.model.alpha));
    put("beta", fmt(c.model.beta));
    put("a", fmt(c.model.a));
    put("b", fmt(c.model.b));
    put("k", fmt(c.model.k));
    put("zeta", fmt(c.model.zeta));
    put("lambda", fmt(c.model.lambda));

    out += "\n[option]\n";
    put("strike", fmt(c.option.strike));
    put("maturity", fmt(c.option.maturity));

    out += "\n[costs]\n";
    put("k0", fmt(c.costs.k0));
    put("k1", fmt(c.costs.k1));
    put("k2", fmt(c.costs.k2));
    put("delta_t", fmt(c.costs.delta_t));

    out += "\n[grid]\n";
    put("s_max", fmt(c.grid.s_max));
    put("v_max", fmt(c.grid.v_max));
    put("r_max", fmt(c.grid.r_max));
    put("m", std::to_string(c.grid.m));
    put("j", std::to_string(c.grid.j));
    put("k", std::to_string(c.grid.k));
    put("n", std::to_string(c.grid.n));

    out += "\n[solver]\n";
    put("kind", std::string(to_string(c.solver)));
    put("theta1", fmt(c.douglas.theta1));
    put("clamp_negative", c.douglas.clamp_negative ? "true" : "false");
    put("pivot_tol", fmt(c.douglas.pivot_tol));
    put("seed", std::to_string(c.seed));
    put("mc_paths", std::to_string(c.mc_paths));
    put("mc_steps", std::to_string(c.mc_steps));
    put("mc_scheme",
        c.mc_scheme == McScheme::full_truncation ? "full_truncation" : "reflection");
    put("mc_drift", c.mc_drift == McDrift::pde_consistent ? "pde_consistent" : "sde_paper");

    out += "\n[queries]\n";
    for (const QueryPoint& q : c.queries) {
        put("point", fmt(q.s) + ", " + fmt(q.v) + ", " + fmt(q.r));
    }

    if (!c.anchors.empty()) {
        out += "\n[anchors]\n";
        for (const AnchorPoint& p : c.anchors) {
            put("anchor", fmt(p.s) + ", " + fmt(p.v) + ", " + fmt(p.r) + ", " + fmt(p.price));
        }
    }
    if (!c.ladder.empty()) {
        out += "\n[ladder]\n";
        for (const LadderRung& rung : c.ladder) {
            put("rung", std::to_string(rung.m) + ", " + std::to_string(rung.j) + ", " +
                            std::to_string(rung.k) + ", " + std::to_string(rung.n));
        }
    }

    out += "\n[surface]\n";
    put("r", fmt(c.surface.r));
    if (c.surface.v) put("v", fmt(*c.surface.v));
    put("payoff", c.surface.payoff ? "true" : "false");

    if (!c.out_path.empty()) {
        out += "\n[output]\n";
        put("path", c.out_path);
    }
    return out;
}

}  // namespace hcir
