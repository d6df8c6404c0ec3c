#include "fourterm/coeffs.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fourterm::coeffs {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

LimitProfile LimitProfile::constant(double alpha) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw ValidationError("constant profile needs finite alpha >= 0");
    LimitProfile p;
    p.kind_ = Kind::Constant;
    p.param_ = alpha;
    return p;
}

LimitProfile LimitProfile::linear_slope(double slope) {
    if (!(slope >= 0.0) || !std::isfinite(slope))
        throw ValidationError("linear profile needs finite slope >= 0");
    LimitProfile p;
    p.kind_ = Kind::Linear;
    p.param_ = slope;
    return p;
}

LimitProfile LimitProfile::quadratic(double coefficient) {
    if (!(coefficient >= 0.0) || !std::isfinite(coefficient))
        throw ValidationError("quadratic profile needs finite coefficient >= 0");
    LimitProfile p;
    p.kind_ = Kind::Quadratic;
    p.param_ = coefficient;
    return p;
}

LimitProfile LimitProfile::table(std::vector<std::pair<double, double>> points) {
    if (points.size() < 2) throw ValidationError("profile table needs at least two points");
    for (std::size_t i = 0; i < points.size(); ++i) {
        auto [t, a] = points[i];
        if (!std::isfinite(t) || !std::isfinite(a))
            throw ValidationError("profile table entries must be finite");
        if (a < 0.0) throw ValidationError("profile table has a negative alpha entry");
        if (i > 0 && !(t > points[i - 1].first))
            throw ValidationError("profile table abscissae must be strictly increasing");
    }
    if (points.front().first > 0.0)
        points.insert(points.begin(), {0.0, points.front().second});
    LimitProfile p;
    p.kind_ = Kind::Table;
    p.table_ = std::move(points);
    p.horizon_ = std::min(kDefaultHorizon, p.table_.back().first);
    return p;
}

void LimitProfile::set_horizon(double t_star) {
    if (!(t_star > 0.0)) throw ValidationError("horizon must be positive");
    if (kind_ == Kind::Table) t_star = std::min(t_star, table_.back().first);
    horizon_ = t_star;
}

double LimitProfile::alpha(double t) const {
    if (t < 0.0) t = 0.0;
    switch (kind_) {
        case Kind::Constant: return param_;
        case Kind::Linear: return param_ * t;
        case Kind::Quadratic: return param_ * t * t;
        case Kind::Table: {
            if (t <= table_.front().first) return table_.front().second;
            if (t >= table_.back().first) return table_.back().second;
            auto it = std::upper_bound(table_.begin(), table_.end(), t,
                                       [](double v, const auto& p) { return v < p.first; });
            auto [t1, a1] = *it;
            auto [t0, a0] = *(it - 1);
            double w = (t - t0) / (t1 - t0);
            return a0 + w * (a1 - a0);
        }
    }
    return 0.0;
}

double LimitProfile::t_minus(double x) const {
    if (x <= 0.0) return 0.0;
    switch (kind_) {
        case Kind::Constant: return x <= param_ ? 0.0 : kInf;
        case Kind::Linear: {
            if (param_ == 0.0) return kInf;
            double s = x / param_;
            return s <= horizon_ ? s : kInf;
        }
        case Kind::Quadratic: {
            if (param_ == 0.0) return kInf;
            double s = std::sqrt(x / param_);
            return s <= horizon_ ? s : kInf;
        }
        case Kind::Table: {
            // first s with alpha(s) >= x, by segment walk
            double prev_t = 0.0, prev_a = alpha(0.0);
            if (prev_a >= x) return 0.0;
            for (const auto& [t, a] : table_) {
                if (t > horizon_) {
                    double ah = alpha(horizon_);
                    if (ah >= x)
                        return prev_t + (x - prev_a) * (horizon_ - prev_t) / (ah - prev_a);
                    return kInf;
                }
                if (t <= prev_t) continue;
                if (a >= x) return prev_t + (x - prev_a) * (t - prev_t) / (a - prev_a);
                prev_t = t;
                prev_a = a;
            }
            return kInf;
        }
    }
    return kInf;
}

double LimitProfile::t_plus(double x) const {
    if (x <= 0.0) return kInf;
    switch (kind_) {
        case Kind::Constant: return x <= param_ ? kInf : kInf;
        case Kind::Linear:
        case Kind::Quadratic:
            // nondecreasing profiles: once reached, alpha stays >= x
            return t_minus(x) < kInf ? kInf : kInf;
        case Kind::Table: {
            if (t_minus(x) == kInf) return kInf;
            if (alpha(horizon_) >= x) return kInf;
            // last s in [0, horizon] with alpha(s) >= x
            double best = kInf;
            double prev_t = 0.0, prev_a = alpha(0.0);
            for (std::size_t i = 0; i <= table_.size(); ++i) {
                double t = i < table_.size() ? std::min(table_[i].first, horizon_) : horizon_;
                double a = alpha(t);
                if (t <= prev_t && i > 0) break;
                if (prev_a >= x && a < x)
                    best = prev_t + (prev_a - x) * (t - prev_t) / (prev_a - a);
                prev_t = t;
                prev_a = a;
                if (t >= horizon_) break;
            }
            return best;
        }
    }
    return kInf;
}

bool LimitProfile::has_interval_property(double x) const {
    if (kind_ != Kind::Table) return true;  // monotone or constant by construction
    const int kSamples = 2048;
    bool seen = false, ended = false;
    for (int i = 0; i <= kSamples; ++i) {
        double s = horizon_ * i / kSamples;
        bool in = alpha(s) >= x;
        if (in && ended) return false;
        if (in) seen = true;
        if (seen && !in) ended = true;
    }
    return true;
}

double LimitProfile::max_alpha(double t) const {
    t = std::min(t, horizon_);
    switch (kind_) {
        case Kind::Constant: return param_;
        case Kind::Linear: return param_ * t;
        case Kind::Quadratic: return param_ * t * t;
        case Kind::Table: {
            double best = alpha(t);
            for (const auto& [ti, ai] : table_) {
                if (ti > t) break;
                best = std::max(best, ai);
            }
            return std::max(best, alpha(0.0));
        }
    }
    return 0.0;
}

CoefficientFamily::CoefficientFamily(std::string name, LimitProfile profile, double scale_exponent)
    : name_(std::move(name)), profile_(std::move(profile)), scale_exponent_(scale_exponent) {
    if (scale_exponent_ < 0.0 || !std::isfinite(scale_exponent_))
        throw ValidationError("scale_exponent must be finite and >= 0");
}

double CoefficientFamily::b(int n, int N) const {
    if (n < 0 || N < 1) throw ValidationError("need n >= 0 and N >= 1");
    return 3.0 * beta(static_cast<double>(n) / N);
}

double CoefficientFamily::c(int n, int N) const {
    if (n < 0 || N < 1) throw ValidationError("need n >= 0 and N >= 1");
    double be = beta(static_cast<double>(n) / N);
    return 3.0 * be * be;
}

double CoefficientFamily::d(int n, int N) const {
    if (n < 0 || N < 1) throw ValidationError("need n >= 0 and N >= 1");
    double be = beta(static_cast<double>(n) / N);
    return be * be * be;
}

double CoefficientFamily::scale_factor(int N) const {
    return std::pow(static_cast<double>(N), scale_exponent_);
}

double CoefficientFamily::b_raw(int n, int N) const { return b(n, N) * scale_factor(N); }

double CoefficientFamily::c_raw(int n, int N) const {
    double f = scale_factor(N);
    return c(n, N) * f * f;
}

double CoefficientFamily::d_raw(int n, int N) const {
    double f = scale_factor(N);
    return d(n, N) * f * f * f;
}

bool CoefficientFamily::is_identically_zero() const {
    for (int i = 0; i <= 64; ++i)
        if (profile_.alpha(profile_.horizon() * i / 64.0) != 0.0) return false;
    return true;
}

CoefficientFamily make_constant_family(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw ValidationError("constant family needs alpha > 0");
    return CoefficientFamily("constant", LimitProfile::constant(alpha), 0.0);
}

CoefficientFamily make_jacobi_pineiro_family() {
    return CoefficientFamily("jacobi_pineiro", LimitProfile::constant(1.0), 0.0);
}

CoefficientFamily make_laguerre1_family() {
    return CoefficientFamily("laguerre1", LimitProfile::linear_slope(27.0 / 8.0), 1.0);
}

CoefficientFamily make_macdonald_family() {
    return CoefficientFamily("macdonald", LimitProfile::quadratic(27.0 / 4.0), 2.0);
}

CoefficientFamily make_custom_family(LimitProfile profile, std::string name) {
    return CoefficientFamily(std::move(name), std::move(profile), 0.0);
}

namespace {

CoefficientFamily family_from_descriptor(const nlohmann::json& j) {
    if (!j.is_object()) throw ValidationError("family descriptor must be a JSON object");
    for (const auto& [key, _] : j.items()) {
        if (key != "name" && key != "kind" && key != "alpha" && key != "scale_exponent" &&
            key != "horizon")
            throw ValidationError("unknown family descriptor field: " + key);
    }
    const std::string kind = j.value("kind", std::string());
    if (kind.empty()) throw ValidationError("family descriptor needs a \"kind\"");

    auto get_alpha_number = [&]() -> double {
        if (!j.contains("alpha") || !j["alpha"].is_number())
            throw ValidationError("kind \"" + kind + "\" needs a numeric \"alpha\"");
        return j["alpha"].get<double>();
    };

    CoefficientFamily fam = [&]() -> CoefficientFamily {
        if (kind == "constant") return make_constant_family(get_alpha_number());
        if (kind == "jacobi_pineiro") return make_jacobi_pineiro_family();
        if (kind == "laguerre1") return make_laguerre1_family();
        if (kind == "macdonald") return make_macdonald_family();
        if (kind == "custom") {
            if (!j.contains("alpha")) throw ValidationError("custom family needs \"alpha\"");
            LimitProfile prof = [&]() {
                if (j["alpha"].is_number()) {
                    double a = j["alpha"].get<double>();
                    if (a < 0.0) throw ValidationError("custom alpha must be >= 0");
                    return LimitProfile::constant(a);
                }
                if (!j["alpha"].is_object() || !j["alpha"].contains("grid"))
                    throw ValidationError("custom alpha must be a number or {grid, interp}");
                if (j["alpha"].value("interp", std::string("linear")) != "linear")
                    throw ValidationError("only linear interpolation is supported");
                std::vector<std::pair<double, double>> pts;
                for (const auto& row : j["alpha"]["grid"]) {
                    if (!row.is_array() || row.size() != 2)
                        throw ValidationError("grid rows must be [t, alpha] pairs");
                    pts.emplace_back(row[0].get<double>(), row[1].get<double>());
                }
                return LimitProfile::table(std::move(pts));
            }();
            std::string name = j.value("name", std::string("custom"));
            CoefficientFamily f = make_custom_family(std::move(prof), name);
            if (j.contains("scale_exponent"))
                f = CoefficientFamily(f.name(), f.profile(), j["scale_exponent"].get<double>());
            return f;
        }
        throw ValidationError("unknown family kind: " + kind);
    }();

    if (j.contains("scale_exponent") && kind != "custom") {
        double p = j["scale_exponent"].get<double>();
        if (p != fam.scale_exponent())
            throw ValidationError("scale_exponent conflicts with kind \"" + kind + "\"");
    }
    if (j.contains("horizon")) {
        LimitProfile prof = fam.profile();
        prof.set_horizon(j["horizon"].get<double>());
        fam = CoefficientFamily(j.value("name", fam.name()), prof, fam.scale_exponent());
    } else if (j.contains("name") && j["name"].is_string() && j["name"] != fam.name()) {
        fam = CoefficientFamily(j["name"].get<std::string>(), fam.profile(), fam.scale_exponent());
    }
    return fam;
}

}  // namespace

CoefficientFamily load_family_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("family descriptor is not valid JSON: ") + e.what());
    }
    try {
        return family_from_descriptor(j);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed family descriptor: ") + e.what());
    }
}

CoefficientFamily load_family_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open family descriptor: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_family_json(ss.str());
}

}  // namespace fourterm::coeffs
