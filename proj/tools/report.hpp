#pragma once

#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

namespace hsurf::cli {

using nlohmann::ordered_json;

/// Bad flag or flag value; maps to exit code 2.
class UsageError : public std::runtime_error {
public:
    UsageError(std::string flag, const std::string& what) : std::runtime_error(what), flag_(std::move(flag)) {}
    const std::string& flag() const noexcept { return flag_; }

private:
    std::string flag_;
};

/// Inclusive sample axis a:b:N.
struct Axis {
    double a = 0.0, b = 0.0;
    int n = 1;
    double at(int k) const { return n == 1 ? a : a + (b - a) * k / (n - 1); }
};

Axis parse_axis(const std::string& text, const std::string& flag);
/// "a:b:Nxc:d:M".
std::pair<Axis, Axis> parse_grid(const std::string& text, const std::string& flag);
std::pair<double, double> parse_pair(const std::string& text, const std::string& flag);
std::map<std::string, double> parse_params(const std::vector<std::string>& items, const std::string& flag);
double parse_number(const std::string& text, const std::string& flag);

/// %.17g
std::string fmt17(double x);

ordered_json to_json(const Eigen::VectorXd& v);
ordered_json to_json(const Eigen::MatrixXd& m);

/// Per-point records plus a summary derived from them.
class Report {
public:
    explicit Report(const std::vector<std::string>& command);

    ordered_json& add_record(ordered_json record);
    /// Folds a measured value into the running maximum of `name`.
    void track(const std::string& name, double value);
    /// Declares that the maximum of `name` must not exceed `tol`.
    void require_max(const std::string& name, double tol);
    void count_error() { ++errors_; }
    void set(const std::string& key, ordered_json value) { extra_[key] = std::move(value); }

    bool passed() const;
    void write(std::ostream& os) const;

private:
    std::vector<std::string> command_;
    std::vector<ordered_json> records_;
    std::vector<std::string> order_;
    std::map<std::string, double> maxima_;
    std::vector<std::pair<std::string, double>> limits_;
    ordered_json extra_ = ordered_json::object();
    int errors_ = 0;
};

}  // namespace hsurf::cli
