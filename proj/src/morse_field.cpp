#include "wittenlab/morse_field.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "wittenlab/report.hpp"

namespace wittenlab {

namespace {
double smoothstep5(double t) {
    if (t <= 0.0)
        return 0.0;
    if (t >= 1.0)
        return 1.0;
    return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

// int_0^u v (1 - S5(v)) dv  with S5 the quintic smoothstep
double blend_antiderivative(double u) {
    const double u2 = u * u;
    const double u5 = u2 * u2 * u;
    // u^2/2 - (2 u^5 - 2.5 u^6 + (6/7) u^7)
    return 0.5 * u2 - (2.0 * u5 - 2.5 * u5 * u + (6.0 / 7.0) * u5 * u2);
}
const double kBlendIntegral = blend_antiderivative(1.0); // = 1/7

// bump B(t) = 64 (t(1-t))^3, max 1, integral 1/140... * 64
double bump(double t) {
    const double w = t * (1.0 - t);
    return 64.0 * w * w * w;
}
double bump_antiderivative(double t) {
    const double t4 = t * t * t * t;
    return 64.0 * (t4 / 4.0 - 0.6 * t4 * t + 0.5 * t4 * t * t - t4 * t * t * t / 7.0);
}
const double kBumpIntegral = bump_antiderivative(1.0); // = 64/140
} // namespace

double periodic_delta(double x, double ref, double period) {
    double d = std::fmod(x - ref, period);
    if (d < -period / 2)
        d += period;
    if (d >= period / 2)
        d -= period;
    return d;
}

MorseProfile1D::MorseProfile1D(double length, MorseParams1D params)
    : length_(length), params_(params) {
    const double rho0 = params_.rho0;
    if (!(rho0 > 0.0))
        throw ConfigError("morse profile: rho0 must be positive");
    double a = params_.min_pos, b = params_.max_pos;
    // normalize b into (a, a+length)
    double gap = std::fmod(b - a, length);
    if (gap < 0)
        gap += length;
    if (gap == 0.0)
        throw ConfigError("morse profile: min and max positions coincide");
    l1_ = gap - 2 * rho0;
    l2_ = (length - gap) - 2 * rho0;
    if (l1_ <= 0.0 || l2_ <= 0.0)
        throw ConfigError("morse profile: quadratic windows overlap; shrink rho0 or move the "
                          "critical points apart");
    const double z1 = blend_frac_ * l1_, z2 = blend_frac_ * l2_;
    const double base1 = rho0 * l1_ + 2.0 * z1 * z1 * kBlendIntegral;
    const double base2 = rho0 * l2_ + 2.0 * z2 * z2 * kBlendIntegral;
    const double rise1 = rho0 * rho0 + base1;
    const double rise2 = rho0 * rho0 + base2;
    base_rise_ = std::max(rise1, rise2);
    amplitude_ = (params_.amplitude > 0.0) ? params_.amplitude : base_rise_;
    if (amplitude_ < base_rise_ - 1e-12) {
        std::ostringstream os;
        os << "morse profile: amplitude " << amplitude_ << " below the minimum admissible "
           << base_rise_ << " for this geometry";
        throw ConfigError(os.str());
    }
    beta1_ = (amplitude_ - rise1) / (kBumpIntegral * l1_ * (1.0 - 2.0 * blend_frac_));
    beta2_ = (amplitude_ - rise2) / (kBumpIntegral * l2_ * (1.0 - 2.0 * blend_frac_));
}

double MorseProfile1D::connector_deriv(double tau, double ell, double beta) const {
    const double rho0 = params_.rho0;
    const double bf = blend_frac_;
    const double zone = bf * ell;
    if (tau < bf) {
        const double u = tau / bf;
        return rho0 + zone * u * (1.0 - smoothstep5(u));
    }
    if (tau > 1.0 - bf) {
        const double u = (1.0 - tau) / bf;
        return rho0 + zone * u * (1.0 - smoothstep5(u));
    }
    const double tb = (tau - bf) / (1.0 - 2.0 * bf);
    return rho0 + beta * bump(tb);
}

double MorseProfile1D::connector_value(double tau, double ell, double beta) const {
    const double rho0 = params_.rho0;
    const double bf = blend_frac_;
    const double zone = bf * ell;
    const double plateau = (1.0 - 2.0 * bf) * ell;
    double v = 0.0;
    if (tau <= bf)
        return rho0 * tau * ell + zone * zone * blend_antiderivative(tau / bf);
    v = rho0 * bf * ell + zone * zone * kBlendIntegral;
    if (tau <= 1.0 - bf) {
        const double tb = (tau - bf) / (1.0 - 2.0 * bf);
        return v + rho0 * (tau - bf) * ell + beta * plateau * bump_antiderivative(tb);
    }
    v += rho0 * plateau + beta * plateau * kBumpIntegral;
    // right blend zone, integrate the mirrored profile from its far end
    const double u = (1.0 - tau) / bf;
    const double tail = rho0 * (1.0 - tau) * ell + zone * zone * blend_antiderivative(u);
    const double full_zone = rho0 * bf * ell + zone * zone * kBlendIntegral;
    return v + (full_zone - tail);
}

double MorseProfile1D::derivative(double s) const {
    const double a = params_.min_pos, rho0 = params_.rho0;
    double u = std::fmod(s - a, length_);
    if (u < 0)
        u += length_;
    const double gap = l1_ + 2 * rho0;
    if (u <= rho0)
        return u;
    if (u < rho0 + l1_)
        return connector_deriv((u - rho0) / l1_, l1_, beta1_);
    if (u <= gap + rho0)
        return -(u - gap);
    if (u < length_ - rho0)
        return -connector_deriv((u - gap - rho0) / l2_, l2_, beta2_);
    return u - length_;
}

double MorseProfile1D::value(double s) const {
    const double a = params_.min_pos, rho0 = params_.rho0;
    double u = std::fmod(s - a, length_);
    if (u < 0)
        u += length_;
    const double gap = l1_ + 2 * rho0;
    const double half_window = 0.5 * rho0 * rho0;
    if (u <= rho0)
        return 0.5 * u * u;
    if (u < rho0 + l1_)
        return half_window + connector_value((u - rho0) / l1_, l1_, beta1_);
    if (u <= gap + rho0)
        return amplitude_ - 0.5 * (u - gap) * (u - gap);
    if (u < length_ - rho0)
        return (amplitude_ - half_window) - connector_value((u - gap - rho0) / l2_, l2_, beta2_);
    return 0.5 * (u - length_) * (u - length_);
}

double MorseProfile1D::derivative_sup() const {
    // windows: <= rho0; blend zones: rho0 + zone*max u(1-S5); plateau: rho0 + beta
    double m = 0.0;
    for (double u = 0.0; u <= 1.0; u += 1e-4)
        m = std::max(m, u * (1.0 - smoothstep5(u)));
    const double z = blend_frac_ * std::max(l1_, l2_);
    return params_.rho0 + std::max(z * m, std::max(beta1_, beta2_));
}

namespace {
ScalarField field_from_profiles(const CellComplex& cx, const MorseProfile1D* px,
                                const MorseProfile1D* py) {
    ScalarField f;
    f.values.resize(cx.cells.size());
    for (std::size_t r = 0; r < cx.cells.size(); ++r) {
        f.values[r].resize(cx.cells[r].size());
        for (std::size_t c = 0; c < cx.cells[r].size(); ++c) {
            const auto& b = cx.cells[r][c].barycenter;
            double v = px->value(b[0]);
            if (py)
                v += py->value(b[1]);
            f.values[r][c] = v;
        }
    }
    return f;
}
} // namespace

ScalarField blended_morse_function_1d(const CellComplex& cx, const MorseParams1D& params) {
    if (cx.dim != 1)
        throw ConfigError("blended_morse_function_1d: expects a circle complex");
    MorseProfile1D profile(cx.periods[0], params);
    ScalarField f = field_from_profiles(cx, &profile, nullptr);
    const double rho0 = params.rho0;
    double gap = std::fmod(params.max_pos - params.min_pos, cx.periods[0]);
    if (gap < 0)
        gap += cx.periods[0];
    CriticalPoint pmin{{params.min_pos, 0.0}, 0, rho0, 0.0, {1, 1}};
    CriticalPoint pmax{{params.min_pos + gap, 0.0}, 1, rho0, profile.amplitude(), {-1, 1}};
    f.critical_points = {pmin, pmax};
    f.connector_derivative_min = profile.connector_derivative_min();
    f.derivative_sup = profile.derivative_sup();
    std::ostringstream os;
    os << "blended1d min=" << format_double(params.min_pos) << " max="
       << format_double(params.max_pos) << " rho0=" << format_double(rho0)
       << " amplitude=" << format_double(profile.amplitude());
    f.descriptor = os.str();
    return f;
}

ScalarField blended_morse_function_1d(const CellComplex& cx, double min_pos, double max_pos,
                                      double rho0, double amplitude) {
    return blended_morse_function_1d(cx, MorseParams1D{min_pos, max_pos, rho0, amplitude});
}

ScalarField product_morse_function_2d(const CellComplex& cx, const MorseParams1D& px,
                                      const MorseParams1D& py) {
    if (cx.dim != 2)
        throw ConfigError("product_morse_function_2d: expects a torus complex");
    MorseProfile1D fx(cx.periods[0], px);
    MorseProfile1D fy(cx.periods[1], py);
    ScalarField f = field_from_profiles(cx, &fx, &fy);
    const double rho0 = std::min(px.rho0, py.rho0);
    auto norm = [](double pos, double delta, double period) {
        double g = std::fmod(delta, period);
        if (g < 0)
            g += period;
        return pos + g;
    };
    const double xm = px.min_pos, ym = py.min_pos;
    const double xM = norm(xm, px.max_pos - xm, cx.periods[0]);
    const double yM = norm(ym, py.max_pos - ym, cx.periods[1]);
    const double ax = fx.amplitude(), ay = fy.amplitude();
    f.critical_points = {{{xm, ym}, 0, rho0, 0.0, {1, 1}},
                         {{xM, ym}, 1, rho0, ax, {-1, 1}},
                         {{xm, yM}, 1, rho0, ay, {1, -1}},
                         {{xM, yM}, 2, rho0, ax + ay, {-1, -1}}};
    f.connector_derivative_min =
        std::min(fx.connector_derivative_min(), fy.connector_derivative_min());
    f.derivative_sup = std::hypot(fx.derivative_sup(), fy.derivative_sup());
    std::ostringstream os;
    os << "product2d x:(min=" << format_double(px.min_pos) << " max=" << format_double(px.max_pos)
       << " rho0=" << format_double(px.rho0) << " amp=" << format_double(fx.amplitude())
       << ") y:(min=" << format_double(py.min_pos) << " max=" << format_double(py.max_pos)
       << " rho0=" << format_double(py.rho0) << " amp=" << format_double(fy.amplitude()) << ")";
    f.descriptor = os.str();
    return f;
}

double window_normal_form_error(const CellComplex& cx, const ScalarField& f) {
    double worst = 0.0;
    for (const CriticalPoint& p : f.critical_points) {
        for (std::size_t r = 0; r < cx.cells.size(); ++r) {
            for (std::size_t c = 0; c < cx.cells[r].size(); ++c) {
                const auto& b = cx.cells[r][c].barycenter;
                double quad = p.value, dist2 = 0.0;
                for (int ax = 0; ax < cx.dim; ++ax) {
                    const double d = periodic_delta(b[ax], p.position[ax], cx.periods[ax]);
                    dist2 += d * d;
                    quad += p.axis_signs[ax] * 0.5 * d * d;
                }
                if (dist2 <= p.rho0 * p.rho0)
                    worst = std::max(worst, std::abs(f.values[r][c] - quad));
            }
        }
    }
    return worst;
}

std::vector<int> morse_counts(const ScalarField& f, int dim) {
    std::vector<int> m(dim + 1, 0);
    for (const CriticalPoint& p : f.critical_points) {
        if (p.index < 0 || p.index > dim)
            throw std::out_of_range("morse_counts: critical index out of range");
        ++m[p.index];
    }
    return m;
}

void export_scalar_field_csv(const CellComplex& cx, const ScalarField& f,
                             const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("export_scalar_field_csv: cannot open " + path);
    out << "# field: " << f.descriptor << "\n";
    for (const CriticalPoint& p : f.critical_points)
        out << "# critical_point," << format_double(p.position[0]) << ","
            << format_double(p.position[1]) << "," << p.index << "," << format_double(p.rho0)
            << "\n";
    out << "# derivative_bounds," << format_double(f.connector_derivative_min) << ","
        << format_double(f.derivative_sup) << "\n";
    out << "degree,cell,x,y,value\n";
    for (std::size_t r = 0; r < f.values.size(); ++r)
        for (std::size_t c = 0; c < f.values[r].size(); ++c) {
            const auto& b = cx.cells[r][c].barycenter;
            out << r << "," << c << "," << format_double(b[0]) << "," << format_double(b[1])
                << "," << format_double(f.values[r][c]) << "\n";
        }
}

ScalarField import_scalar_field_csv(const CellComplex& cx, const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("import_scalar_field_csv: cannot open " + path);
    ScalarField f;
    f.values.resize(cx.cells.size());
    for (std::size_t r = 0; r < cx.cells.size(); ++r)
        f.values[r].assign(cx.cells[r].size(), 0.0);
    std::string line;
    int n_loaded = 0;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        if (line[0] == '#') {
            std::istringstream ls(line.substr(1));
            std::string tag;
            std::getline(ls, tag, ',');
            // trim
            tag.erase(0, tag.find_first_not_of(" \t"));
            tag.erase(tag.find_last_not_of(" \t") + 1);
            if (tag == "critical_point") {
                CriticalPoint p;
                std::string cell_str;
                std::getline(ls, cell_str, ',');
                p.position[0] = std::stod(cell_str);
                std::getline(ls, cell_str, ',');
                p.position[1] = std::stod(cell_str);
                std::getline(ls, cell_str, ',');
                p.index = std::stoi(cell_str);
                std::getline(ls, cell_str, ',');
                p.rho0 = std::stod(cell_str);
                f.critical_points.push_back(p);
            } else if (tag == "derivative_bounds") {
                std::string v;
                std::getline(ls, v, ',');
                f.connector_derivative_min = std::stod(v);
                std::getline(ls, v, ',');
                f.derivative_sup = std::stod(v);
            } else if (tag.rfind("field:", 0) == 0) {
                f.descriptor = tag.substr(6);
                f.descriptor.erase(0, f.descriptor.find_first_not_of(" \t"));
            }
            continue;
        }
        if (line.rfind("degree,", 0) == 0)
            continue;
        std::istringstream ls(line);
        std::string cell_str;
        std::getline(ls, cell_str, ',');
        const int r = std::stoi(cell_str);
        std::getline(ls, cell_str, ',');
        const int c = std::stoi(cell_str);
        std::getline(ls, cell_str, ','); // x
        std::getline(ls, cell_str, ','); // y
        std::getline(ls, cell_str, ',');
        if (r < 0 || r >= static_cast<int>(f.values.size()) || c < 0 ||
            c >= static_cast<int>(f.values[r].size()))
            throw ConfigError("import_scalar_field_csv: cell id outside the complex");
        f.values[r][c] = std::stod(cell_str);
        ++n_loaded;
    }
    int expected = 0;
    for (const auto& v : f.values)
        expected += static_cast<int>(v.size());
    if (n_loaded != expected)
        throw ConfigError("import_scalar_field_csv: value count does not match the complex");
    return f;
}

} // namespace wittenlab
