#include "wittenlab/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "wittenlab/report.hpp"

namespace wittenlab {

namespace {

const double kTwoPi = 2.0 * M_PI;

struct Parser {
    std::string origin;
    int line_no = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        std::ostringstream os;
        os << origin << ":" << line_no << ": " << msg;
        throw ConfigError(os.str());
    }

    double num(const std::string& v) const {
        try {
            std::size_t used = 0;
            const double d = std::stod(v, &used);
            if (used != v.size())
                fail("trailing characters in number '" + v + "'");
            return d;
        } catch (const ConfigError&) {
            throw;
        } catch (...) {
            fail("expected a number, got '" + v + "'");
        }
    }

    int integer(const std::string& v) const {
        const double d = num(v);
        if (d != std::floor(d))
            fail("expected an integer, got '" + v + "'");
        return static_cast<int>(d);
    }

    template <typename T, typename F> std::vector<T> list(const std::string& v, F conv) const {
        std::vector<T> out;
        std::istringstream is(v);
        std::string item;
        while (std::getline(is, item, ','))
            out.push_back(conv(item));
        if (out.empty())
            fail("expected a non-empty comma-separated list");
        return out;
    }
};

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos)
        return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

} // namespace

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
    static const std::set<std::string> known_sections = {
        "run", "grid", "morse", "morse_x", "morse_y", "sweep", "probe", "tolerances"};
    RunConfig cfg;
    Parser p{origin};
    std::istringstream in(text);
    std::string raw, section;
    while (std::getline(in, raw)) {
        ++p.line_no;
        std::string line = raw;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                p.fail("malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (!known_sections.count(section))
                p.fail("unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            p.fail("expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (value.empty())
            p.fail("empty value for key '" + key + "'");
        auto numf = [&](const std::string& v) { return p.num(v); };
        auto intf = [&](const std::string& v) { return p.integer(v); };
        if (section == "run") {
            if (key == "manifold") {
                if (value != "circle" && value != "torus")
                    p.fail("manifold must be 'circle' or 'torus'");
                cfg.manifold = value;
            } else if (key == "output_dir")
                cfg.output_dir = value;
            else if (key == "seed")
                cfg.seed = static_cast<std::uint64_t>(p.num(value));
            else
                p.fail("unknown key '" + key + "' in [run]");
        } else if (section == "grid") {
            if (key == "n")
                cfg.n = p.integer(value);
            else if (key == "nx")
                cfg.nx = p.integer(value);
            else if (key == "ny")
                cfg.ny = p.integer(value);
            else if (key == "length")
                cfg.length = p.num(value);
            else if (key == "lx")
                cfg.lx = p.num(value);
            else if (key == "ly")
                cfg.ly = p.num(value);
            else
                p.fail("unknown key '" + key + "' in [grid]");
        } else if (section == "morse" || section == "morse_x" || section == "morse_y") {
            MorseParams1D& m = (section == "morse_y") ? cfg.morse_y : cfg.morse_x;
            if (section == "morse_y")
                cfg.morse_y_given = true;
            if (key == "min_pos")
                m.min_pos = p.num(value);
            else if (key == "max_pos")
                m.max_pos = p.num(value);
            else if (key == "rho0")
                m.rho0 = p.num(value);
            else if (key == "amplitude")
                m.amplitude = p.num(value);
            else
                p.fail("unknown key '" + key + "' in [" + section + "]");
        } else if (section == "sweep") {
            if (key == "k_list")
                cfg.k_list = p.list<double>(value, numf);
            else if (key == "t_list")
                cfg.t_list = p.list<double>(value, numf);
            else if (key == "degrees")
                cfg.degrees = p.list<int>(value, intf);
            else
                p.fail("unknown key '" + key + "' in [sweep]");
        } else if (section == "probe") {
            if (key == "epsilon") {
                cfg.epsilon = p.num(value);
                if (!(cfg.epsilon > 0.0 && cfg.epsilon < 0.5))
                    p.fail("epsilon must lie in (0, 1/2)");
            } else if (key == "D")
                cfg.dee = p.num(value);
            else if (key == "trials")
                cfg.trials = p.integer(value);
            else if (key == "xmag")
                cfg.xmag = p.num(value);
            else if (key == "t")
                cfg.probe_t = p.num(value);
            else if (key == "point_grid")
                cfg.point_grid = p.list<double>(value, numf);
            else if (key == "n_radii")
                cfg.n_radii = p.integer(value);
            else
                p.fail("unknown key '" + key + "' in [probe]");
        } else if (section == "tolerances") {
            if (key == "mckean_rel_tol")
                cfg.mckean_rel_tol = p.num(value);
            else if (key == "trace_limit_tol")
                cfg.trace_limit_tol = p.num(value);
            else if (key == "final_rel_tol")
                cfg.final_rel_tol = p.num(value);
            else if (key == "slope_max")
                cfg.slope_max = p.num(value);
            else if (key == "shrink_factor")
                cfg.shrink_factor = p.num(value);
            else if (key == "bochner_slack")
                cfg.bochner_slack = p.num(value);
            else
                p.fail("unknown key '" + key + "' in [tolerances]");
        } else {
            p.fail("key '" + key + "' outside any section");
        }
    }
    // validation of invariant-bearing fields
    p.line_no = 0;
    if (cfg.k_list.empty() || cfg.t_list.empty())
        throw ConfigError(origin + ": k_list and t_list must be non-empty");
    for (double tol : {cfg.mckean_rel_tol, cfg.trace_limit_tol, cfg.final_rel_tol})
        if (!(tol > 0.0))
            throw ConfigError(origin + ": tolerances must be positive");
    if (cfg.point_grid.empty())
        for (int i = 0; i < 9; ++i)
            cfg.point_grid.push_back(-2.0 + 0.5 * i);
    if (cfg.morse_x.max_pos == cfg.morse_x.min_pos)
        cfg.morse_x.max_pos = cfg.morse_x.min_pos + ((cfg.manifold == "circle")
                                                         ? (cfg.length > 0 ? cfg.length : kTwoPi)
                                                         : (cfg.lx > 0 ? cfg.lx : kTwoPi)) /
                                                        2.0;
    if (!cfg.morse_y_given) {
        cfg.morse_y = cfg.morse_x;
        const double ly = cfg.ly > 0 ? cfg.ly : kTwoPi;
        cfg.morse_y.min_pos = ly / 4.0;
        cfg.morse_y.max_pos = ly / 4.0 + ly / 2.0;
    } else if (cfg.morse_y.max_pos == cfg.morse_y.min_pos) {
        const double ly = cfg.ly > 0 ? cfg.ly : kTwoPi;
        cfg.morse_y.max_pos = cfg.morse_y.min_pos + ly / 2.0;
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

CellComplex RunConfig::build_complex() const {
    if (manifold == "circle")
        return build_circle_complex(n, length > 0 ? length : kTwoPi);
    return build_torus_complex(nx, ny, lx > 0 ? lx : kTwoPi, ly > 0 ? ly : kTwoPi);
}

ScalarField RunConfig::build_field(const CellComplex& cx) const {
    ScalarField f = (cx.dim == 1) ? blended_morse_function_1d(cx, morse_x)
                                  : product_morse_function_2d(cx, morse_x, morse_y);
    // reject sweeps beyond the overflow guard up front, reporting the limit
    return f;
}

std::vector<int> RunConfig::degree_list(const CellComplex& cx) const {
    if (!degrees.empty()) {
        for (int r : degrees)
            if (r < 0 || r > cx.dim)
                throw ConfigError("degree list contains a degree outside [0, dim]");
        return degrees;
    }
    std::vector<int> all;
    for (int r = 0; r <= cx.dim; ++r)
        all.push_back(r);
    return all;
}

std::string RunConfig::manifest_prefix() const {
    std::ostringstream os;
    os << "seed=" << seed << " epsilon=" << format_double(epsilon) << " D=" << format_double(dee);
    return os.str();
}

} // namespace wittenlab
