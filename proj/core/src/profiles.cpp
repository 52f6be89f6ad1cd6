#include "tdho/profiles.hpp"

// pchip.hpp in Boost 1.74 calls isnan unqualified.
#include <math.h>
#include <boost/math/interpolators/pchip.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <string>
#include <string_view>

#include "tdho/errors.hpp"

namespace tdho {

struct FrequencyProfile::Interp {
    boost::math::interpolators::pchip<std::vector<double>> spline;
};

namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw DomainError(std::string(name) + " must be positive and finite");
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

bool parse_double(std::string_view s, double& out) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

FrequencyProfile FrequencyProfile::constant(double omega0) {
    require_positive(omega0, "omega0");
    FrequencyProfile p;
    p.kind_ = ProfileKind::Constant;
    p.omega0_ = omega0;
    p.omega_target_ = omega0;
    return p;
}

FrequencyProfile FrequencyProfile::tanh_step(double omega0, double omega_f, double kappa) {
    require_positive(omega0, "omega0");
    require_positive(omega_f, "omega_f");
    require_positive(kappa, "kappa");
    FrequencyProfile p;
    p.kind_ = ProfileKind::TanhStep;
    p.omega0_ = omega0;
    p.omega_target_ = omega_f;
    p.kappa_ = kappa;
    return p;
}

FrequencyProfile FrequencyProfile::sech_bump(double omega0, double omega_c, double kappa) {
    require_positive(omega0, "omega0");
    require_positive(omega_c, "omega_c");
    require_positive(kappa, "kappa");
    FrequencyProfile p;
    p.kind_ = ProfileKind::SechBump;
    p.omega0_ = omega0;
    p.omega_target_ = omega_c;
    p.kappa_ = kappa;
    return p;
}

FrequencyProfile FrequencyProfile::tabulated(std::vector<double> t, std::vector<double> omega) {
    if (t.size() != omega.size())
        throw DomainError("tabulated profile: column lengths differ");
    if (t.size() < 4)
        throw DomainError("tabulated profile: need at least four samples");
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!std::isfinite(t[i])) throw DomainError("tabulated profile: non-finite time");
        require_positive(omega[i], "tabulated omega");
        if (i > 0 && !(t[i] > t[i - 1]))
            throw DomainError("tabulated profile: times must be strictly increasing");
    }
    FrequencyProfile p;
    p.kind_ = ProfileKind::Tabulated;
    p.omega0_ = omega.front();
    p.omega_target_ = omega.back();
    p.sample_t_ = t;
    p.sample_w_ = omega;
    p.interp_ = std::make_shared<const Interp>(
        Interp{boost::math::interpolators::pchip<std::vector<double>>(std::move(t), std::move(omega))});
    return p;
}

FrequencyProfile FrequencyProfile::from_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open profile file " + path.string());
    std::vector<double> ts, ws;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view sv = trim(line);
        if (lineno == 1 && sv.size() >= 3 && sv.substr(0, 3) == "\xEF\xBB\xBF") sv.remove_prefix(3);
        if (sv.empty() || sv.front() == '#') continue;
        auto comma = sv.find(',');
        double a = 0, b = 0;
        bool ok = comma != std::string_view::npos && parse_double(sv.substr(0, comma), a) &&
                  parse_double(sv.substr(comma + 1), b);
        if (!ok) {
            if (ts.empty()) continue;  // header
            throw DomainError(path.string() + ":" + std::to_string(lineno) + ": expected 't,omega'");
        }
        ts.push_back(a);
        ws.push_back(b);
    }
    return tabulated(std::move(ts), std::move(ws));
}

void FrequencyProfile::check_finite(double t) const {
    if (!std::isfinite(t)) throw DomainError("profile evaluated at non-finite time");
    if (kind_ == ProfileKind::Tabulated && (t < sample_t_.front() || t > sample_t_.back()))
        throw RangeError("time outside tabulated profile range");
}

double FrequencyProfile::omega(double t) const {
    check_finite(t);
    const double w0sq = omega0_ * omega0_;
    const double wtsq = omega_target_ * omega_target_;
    double radicand = 0.0;
    switch (kind_) {
        case ProfileKind::Constant:
            return omega0_;
        case ProfileKind::TanhStep:
            radicand = 0.5 * (wtsq + w0sq) + 0.5 * (wtsq - w0sq) * std::tanh(kappa_ * t);
            break;
        case ProfileKind::SechBump: {
            const double c = std::cosh(kappa_ * t);
            radicand = w0sq + (wtsq - w0sq) / (c * c);
            break;
        }
        case ProfileKind::Tabulated:
            radicand = interp_->spline(t);
            if (!(radicand > 0.0)) throw DomainError("tabulated profile interpolates to non-positive omega");
            return radicand;
    }
    if (!(radicand > 0.0)) throw DomainError("profile radicand is not positive");
    return std::sqrt(radicand);
}

double FrequencyProfile::omega_dot(double t) const {
    check_finite(t);
    const double w0sq = omega0_ * omega0_;
    const double wtsq = omega_target_ * omega_target_;
    switch (kind_) {
        case ProfileKind::Constant:
            return 0.0;
        case ProfileKind::TanhStep: {
            const double sech = 1.0 / std::cosh(kappa_ * t);
            return 0.25 * (wtsq - w0sq) * kappa_ * sech * sech / omega(t);
        }
        case ProfileKind::SechBump: {
            const double sech = 1.0 / std::cosh(kappa_ * t);
            return -(wtsq - w0sq) * kappa_ * sech * sech * std::tanh(kappa_ * t) / omega(t);
        }
        case ProfileKind::Tabulated: {
            const double h = std::cbrt(std::numeric_limits<double>::epsilon()) * std::max(1.0, std::abs(t));
            const double lo = std::max(t - h, sample_t_.front());
            const double hi = std::min(t + h, sample_t_.back());
            return (interp_->spline(hi) - interp_->spline(lo)) / (hi - lo);
        }
    }
    return 0.0;
}

bool FrequencyProfile::in_asymptotic_region(double t) const {
    switch (kind_) {
        case ProfileKind::Constant:
            return true;
        case ProfileKind::TanhStep:
        case ProfileKind::SechBump:
            return std::abs(std::tanh(kappa_ * t)) > 1.0 - 1e-12;
        case ProfileKind::Tabulated:
            return false;
    }
    return false;
}

const char* to_string(ProfileKind kind) noexcept {
    switch (kind) {
        case ProfileKind::Constant: return "constant";
        case ProfileKind::TanhStep: return "tanh_step";
        case ProfileKind::SechBump: return "sech_bump";
        case ProfileKind::Tabulated: return "tabulated";
    }
    return "unknown";
}

}  // namespace tdho
