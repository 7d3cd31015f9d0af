#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace hsurf::cli {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

}  // namespace

double parse_number(const std::string& text, const std::string& flag) {
    std::size_t pos = 0;
    double x = 0.0;
    try {
        x = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw UsageError(flag, "expected a number, got '" + text + "'");
    }
    if (pos != text.size() || !std::isfinite(x)) throw UsageError(flag, "expected a number, got '" + text + "'");
    return x;
}

Axis parse_axis(const std::string& text, const std::string& flag) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw UsageError(flag, "expected a:b:N, got '" + text + "'");
    Axis ax{parse_number(parts[0], flag), parse_number(parts[1], flag), 0};
    const double n = parse_number(parts[2], flag);
    if (n < 1 || n != std::floor(n) || n > 100000) throw UsageError(flag, "sample count must be a positive integer");
    ax.n = static_cast<int>(n);
    return ax;
}

std::pair<Axis, Axis> parse_grid(const std::string& text, const std::string& flag) {
    const auto x = text.find('x');
    if (x == std::string::npos) throw UsageError(flag, "expected a:b:Nxc:d:M, got '" + text + "'");
    return {parse_axis(text.substr(0, x), flag), parse_axis(text.substr(x + 1), flag)};
}

std::pair<double, double> parse_pair(const std::string& text, const std::string& flag) {
    const auto parts = split(text, ',');
    if (parts.size() != 2) throw UsageError(flag, "expected u,v, got '" + text + "'");
    return {parse_number(parts[0], flag), parse_number(parts[1], flag)};
}

std::map<std::string, double> parse_params(const std::vector<std::string>& items, const std::string& flag) {
    std::map<std::string, double> out;
    for (const auto& it : items) {
        const auto eq = it.find('=');
        if (eq == std::string::npos || eq == 0) throw UsageError(flag, "expected k=v, got '" + it + "'");
        out[it.substr(0, eq)] = parse_number(it.substr(eq + 1), flag);
    }
    return out;
}

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

ordered_json to_json(const Eigen::VectorXd& v) {
    ordered_json a = ordered_json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

ordered_json to_json(const Eigen::MatrixXd& m) {
    ordered_json a = ordered_json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) a.push_back(to_json(Eigen::VectorXd(m.row(i).transpose())));
    return a;
}

Report::Report(const std::vector<std::string>& command) : command_(command) {}

ordered_json& Report::add_record(ordered_json record) {
    records_.push_back(std::move(record));
    return records_.back();
}

void Report::track(const std::string& name, double value) {
    auto it = maxima_.find(name);
    if (it == maxima_.end()) {
        order_.push_back(name);
        maxima_[name] = value;
    } else if (!(value <= it->second)) {
        // NaN propagates so that it fails any limit.
        it->second = value;
    }
}

void Report::require_max(const std::string& name, double tol) { limits_.emplace_back(name, tol); }

bool Report::passed() const {
    if (errors_ > 0) return false;
    for (const auto& [name, tol] : limits_) {
        auto it = maxima_.find(name);
        if (it != maxima_.end() && !(it->second <= tol)) return false;
    }
    return true;
}

void Report::write(std::ostream& os) const {
    ordered_json j;
    j["schema_version"] = 1;
    j["command"] = command_;
    j["records"] = records_;
    ordered_json summary;
    ordered_json maxima = ordered_json::object();
    for (const auto& name : order_) maxima[name] = maxima_.at(name);
    summary["max"] = maxima;
    ordered_json checks = ordered_json::array();
    for (const auto& [name, tol] : limits_) {
        auto it = maxima_.find(name);
        ordered_json c;
        c["name"] = name;
        c["tolerance"] = tol;
        if (it == maxima_.end()) {
            c["max"] = nullptr;
            c["pass"] = true;
        } else {
            c["max"] = it->second;
            c["pass"] = it->second <= tol;
        }
        checks.push_back(c);
    }
    summary["checks"] = checks;
    summary["errors"] = errors_;
    for (const auto& [k, v] : extra_.items()) summary[k] = v;
    summary["pass"] = passed();
    j["summary"] = summary;
    os << j.dump(2) << '\n';
}

}  // namespace hsurf::cli
