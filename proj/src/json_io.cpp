#include "perstopy/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace perstopy {

using nlohmann::json;

double round12(double v) {
  if (!std::isfinite(v)) return v;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

json number_json(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return round12(v);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(InputErrorKind::FileNotFound, "file not found: " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

json parse_json(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(InputErrorKind::Malformed, "malformed JSON in " + source + ": " + e.what());
  }
}

namespace {

[[noreturn]] void malformed(const std::string& what) { throw InputError(InputErrorKind::Malformed, what); }

double json_number(const json& v, const char* field) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string() && v.get<std::string>() == "inf") return kInfinity;
  malformed(std::string("expected a number in ") + field);
}

}  // namespace

json metric_to_json(const FiniteMetricSpace& x, std::optional<std::size_t> basepoint) {
  json dist = json::array();
  for (std::size_t i = 0; i < x.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < x.size(); ++j) row.push_back(x.d(i, j));
    dist.push_back(std::move(row));
  }
  json j{{"labels", x.labels()}, {"dist", std::move(dist)}};
  if (basepoint) j["basepoint"] = *basepoint;
  return j;
}

PointedMetricSpace metric_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dist") || !j["dist"].is_array()) malformed("metric JSON needs a \"dist\" matrix");
  std::vector<std::vector<double>> rows;
  for (const auto& r : j["dist"]) {
    if (!r.is_array()) malformed("metric JSON rows must be arrays");
    std::vector<double> row;
    for (const auto& v : r) row.push_back(json_number(v, "dist"));
    rows.push_back(std::move(row));
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    if (!j["labels"].is_array()) malformed("\"labels\" must be an array");
    for (const auto& l : j["labels"]) {
      if (l.is_string()) labels.push_back(l.get<std::string>());
      else if (l.is_number_integer()) labels.push_back(std::to_string(l.get<long long>()));
      else malformed("labels must be strings");
    }
    if (labels.size() != rows.size()) malformed("label count differs from matrix size");
  }
  std::size_t base = 0;
  if (j.contains("basepoint") && !j["basepoint"].is_null()) {
    if (!j["basepoint"].is_number_unsigned()) malformed("\"basepoint\" must be a nonnegative index");
    base = j["basepoint"].get<std::size_t>();
  }
  auto x = validate(rows, std::move(labels));
  if (x.size() == 0) malformed("metric space is empty");
  if (base >= x.size()) malformed("basepoint index out of range");
  return PointedMetricSpace(std::move(x), base);
}

PointedMetricSpace read_metric(const std::string& path) { return metric_from_json(parse_json(read_file(path), path)); }

json group_class_to_json(const GroupClass& c) {
  json j{{"tag", tag_name(c.tag)}, {"rank", c.rank}, {"name", c.to_string()}};
  if (c.tag == GroupTag::Unclassified) {
    json t = json::array();
    for (const auto& v : c.torsion) t.push_back(v.str());
    j["abelianization"] = {{"rank", c.rank}, {"torsion", std::move(t)}};
  }
  return j;
}

json interval_group_to_json(const IntervalPersistentGroup& g) {
  return json{{"group", {{"tag", tag_name(g.group.tag)}, {"rank", g.group.rank}}},
              {"interval", {number_json(g.left), number_json(g.right)}},
              {"open_right", g.open_right}};
}

IntervalPersistentGroup interval_group_from_json(const json& j) {
  if (!j.is_object() || !j.contains("group") || !j.contains("interval"))
    malformed("interval-group JSON needs \"group\" and \"interval\"");
  const auto& g = j["group"];
  if (!g.is_object() || !g.contains("tag") || !g["tag"].is_string()) malformed("group needs a string \"tag\"");
  GroupTag tag{};
  try {
    tag = parse_tag(g["tag"].get<std::string>());
  } catch (const std::invalid_argument& e) {
    malformed(e.what());
  }
  int rank = 0;
  if (g.contains("rank")) {
    if (!g["rank"].is_number_integer() || g["rank"].get<int>() < 0) malformed("group rank must be a nonnegative integer");
    rank = g["rank"].get<int>();
  }
  if (tag == GroupTag::Unclassified) malformed("interval groups must have a classified group");
  const auto& iv = j["interval"];
  if (!iv.is_array() || iv.size() != 2) malformed("\"interval\" must be [a, b]");
  IntervalPersistentGroup out;
  out.group = tag == GroupTag::Trivial ? GroupClass::trivial()
              : tag == GroupTag::Free  ? GroupClass::free_group(rank)
                                        : GroupClass::free_abelian_group(rank);
  out.left = json_number(iv[0], "interval");
  out.right = json_number(iv[1], "interval");
  if (out.right < out.left) malformed("interval endpoints out of order");
  for (auto [key, field] : {std::pair{"open_right", &out.open_right}, std::pair{"open_left", &out.open_left}})
    if (j.contains(key)) {
      if (!j[key].is_boolean()) malformed(std::string("\"") + key + "\" must be a boolean");
      *field = j[key].get<bool>();
    }
  return out;
}

std::string diagram_to_csv(const PersistenceDiagram& d) {
  std::string s = "birth,death\n";
  for (const auto& p : d.sorted().points) s += format_number(p.birth) + "," + format_number(p.death) + "\n";
  return s;
}

PersistenceDiagram diagram_from_csv(const std::string& text) {
  PersistenceDiagram d;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || (lineno == 1 && line.rfind("birth", 0) == 0)) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos) malformed("diagram CSV line " + std::to_string(lineno) + " lacks a comma");
    auto num = [&](const std::string& s) {
      if (s == "inf" || s == "+inf" || s == "Infinity") return kInfinity;
      std::size_t used = 0;
      double v = 0;
      try {
        v = std::stod(s, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != s.size() || s.empty()) malformed("diagram CSV line " + std::to_string(lineno) + ": bad number");
      return v;
    };
    PersistencePoint p{num(line.substr(0, comma)), num(line.substr(comma + 1))};
    if (p.death < p.birth) malformed("diagram CSV line " + std::to_string(lineno) + ": death before birth");
    d.points.push_back(p);
  }
  return d;
}

json pi1_level_to_json(const Pi1Level& level) {
  return json{{"scale", number_json(level.scale)},
              {"vertices", level.skeleton.vertices},
              {"edges", level.skeleton.edges.size()},
              {"triangles", level.skeleton.triangles.size()},
              {"raw_generators", level.raw.presentation.generators.size()},
              {"raw_relators", level.raw.presentation.relators.size()},
              {"presentation", to_text(level.simplified.presentation)},
              {"effort_exhausted", level.simplified.effort_exhausted},
              {"class", group_class_to_json(level.cls)}};
}

json persistent_pi1_to_json(const PersistentPi1& pp) {
  json levels = json::array();
  for (const auto& l : pp.levels) levels.push_back(pi1_level_to_json(l));
  json crit = json::array();
  for (const auto& c : detect_critical_values(pp))
    crit.push_back({{"scale", number_json(c.scale)}, {"verdict", critical_name(c.verdict)}});
  json j{{"basepoint", pp.basepoint}, {"levels", std::move(levels)}, {"critical_values", std::move(crit)}};
  auto ig = as_interval_group(pp);
  j["interval_group"] = ig ? interval_group_to_json(*ig) : json(nullptr);
  return j;
}

json subdendrogram_to_json(const GSubdendrogram& g) {
  json scales = json::array();
  for (double s : g.scales) scales.push_back(number_json(s));
  json reps = json::array();
  for (std::size_t i = 0; i < g.representatives.size(); ++i) {
    const auto& r = g.representatives[i];
    reps.push_back({{"id", i},
                    {"loop", r.representative.points()},
                    {"birth", number_json(r.birth)},
                    {"flagged", r.flagged}});
  }
  return json{{"scales", std::move(scales)}, {"blocks", g.blocks}, {"representatives", std::move(reps)},
              {"flagged", g.flagged}};
}

std::string mu1_matrix_to_csv(const std::vector<std::vector<std::optional<double>>>& m) {
  std::string s;
  for (const auto& row : m) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) s += ",";
      s += row[j] ? format_number(*row[j]) : "unknown";
    }
    s += "\n";
  }
  return s;
}

json dendrogram_to_json(const Dendrogram& d) {
  json scales = json::array();
  for (double s : d.scales) scales.push_back(number_json(s));
  return json{{"size", d.size}, {"scales", std::move(scales)}, {"blocks", d.blocks}};
}

}  // namespace perstopy
