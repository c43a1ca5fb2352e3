#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "perstopy/interleaving.hpp"
#include "perstopy/loops.hpp"
#include "perstopy/metric.hpp"
#include "perstopy/persistence.hpp"
#include "perstopy/persistent_pi1.hpp"

namespace perstopy {

enum class InputErrorKind { FileNotFound, Malformed };

/// Raised for unreadable or unparseable input files. Metric-axiom failures stay MetricError.
class InputError : public std::runtime_error {
 public:
  InputError(InputErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  InputErrorKind kind() const { return kind_; }

 private:
  InputErrorKind kind_;
};

/// Rounds to 12 significant digits; infinities pass through.
double round12(double v);
/// 12 significant digits, "inf" for +infinity.
std::string format_number(double v);
/// JSON number rounded to 12 digits, or the string "inf".
nlohmann::json number_json(double v);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);
nlohmann::json parse_json(const std::string& text, const std::string& source);

/// {"labels": [...], "dist": [[...]], "basepoint": optional index}. Missing basepoint means 0.
/// Distances are written at full precision so a file re-validates to the identical space.
nlohmann::json metric_to_json(const FiniteMetricSpace& x, std::optional<std::size_t> basepoint = std::nullopt);
PointedMetricSpace metric_from_json(const nlohmann::json& j);
PointedMetricSpace read_metric(const std::string& path);

/// {"group": {"tag": "Free", "rank": 2}, "interval": [a, b], "open_right": true}
nlohmann::json interval_group_to_json(const IntervalPersistentGroup& g);
IntervalPersistentGroup interval_group_from_json(const nlohmann::json& j);

/// "birth,death" header, one point per line, "inf" for essential classes.
std::string diagram_to_csv(const PersistenceDiagram& d);
PersistenceDiagram diagram_from_csv(const std::string& text);

nlohmann::json group_class_to_json(const GroupClass& c);
nlohmann::json pi1_level_to_json(const Pi1Level& level);
/// Levels with presentations and classes, critical verdicts, and the interval form if any.
nlohmann::json persistent_pi1_to_json(const PersistentPi1& pp);

/// {"scales": [...], "blocks": per-scale lists of representative ids, "representatives": [...]}
nlohmann::json subdendrogram_to_json(const GSubdendrogram& g);
/// Square CSV without header; "unknown" where a verdict was Unknown.
std::string mu1_matrix_to_csv(const std::vector<std::vector<std::optional<double>>>& m);

nlohmann::json dendrogram_to_json(const Dendrogram& d);

}  // namespace perstopy
