#include "osfd/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "osfd/testbed.hpp"

namespace osfd {

namespace {

std::size_t get_size(const json& doc, const char* key) {
  const auto& v = doc.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw UsageError(std::string("config: '") + key + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

std::optional<std::size_t> get_opt_size(const json& doc, const char* key) {
  if (!doc.contains(key) || doc.at(key).is_null()) return std::nullopt;
  return get_size(doc, key);
}

}  // namespace

json engine_config_to_json(const EngineConfig& c) {
  json j;
  j["n"] = c.n;
  j["n0"] = c.n0;
  j["method"] = to_string(c.method);
  j["seed"] = c.seed;
  j["init"] = to_string(c.init);
  j["scale_outputs"] = c.scale_outputs;
  j["k1"] = c.k1 ? json(*c.k1) : json(nullptr);
  j["k2"] = c.k2 ? json(*c.k2) : json(nullptr);
  j["stop_fill"] = c.stop_fill ? json(*c.stop_fill) : json(nullptr);
  j["maximin_iters"] = c.maximin_iters;
  return j;
}

EngineConfig engine_config_from_json(const json& doc) {
  if (!doc.is_object()) throw UsageError("config: expected a JSON object");
  EngineConfig c;
  try {
    c.n = get_size(doc, "n");
    c.n0 = get_size(doc, "n0");
    if (doc.contains("method")) c.method = parse_method(doc.at("method").get<std::string>());
    if (doc.contains("seed")) {
      const auto& s = doc.at("seed");
      if (!s.is_number_unsigned()) throw UsageError("config: 'seed' must be a non-negative integer");
      c.seed = s.get<std::uint64_t>();
    }
    if (doc.contains("init")) c.init = parse_init(doc.at("init").get<std::string>());
    if (doc.contains("scale_outputs")) c.scale_outputs = doc.at("scale_outputs").get<bool>();
    c.k1 = get_opt_size(doc, "k1");
    c.k2 = get_opt_size(doc, "k2");
    if (doc.contains("stop_fill") && !doc.at("stop_fill").is_null())
      c.stop_fill = doc.at("stop_fill").get<double>();
    if (auto it = get_opt_size(doc, "maximin_iters")) c.maximin_iters = *it;
  } catch (const json::exception& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
  return c;
}

RunConfig parse_run_config(const json& doc) {
  static const std::set<std::string> known = {
      "problem", "p",  "q",         "n",             "n0",
      "method",  "seed", "init",    "scale_outputs", "stop_fill",
      "k1",      "k2", "maximin_iters", "record_every", "reference_size"};
  if (!doc.is_object()) throw UsageError("config: expected a JSON object");
  for (const auto& [key, _] : doc.items())
    if (!known.count(key)) throw UsageError("config: unknown field '" + key + "'");

  RunConfig rc;
  try {
    rc.problem = doc.at("problem").get<std::string>();
  } catch (const json::exception&) {
    throw UsageError("config: 'problem' (string) is required");
  }
  rc.engine = engine_config_from_json(doc);
  const auto p = get_opt_size(doc, "p");
  const auto q = get_opt_size(doc, "q");
  if (rc.is_subprocess()) {
    if (!p || !q) throw UsageError("config: subprocess problems need 'p' and 'q'");
    if (rc.subprocess_command().empty())
      throw UsageError("config: empty subprocess command");
    rc.p = *p;
    rc.q = *q;
  } else {
    const auto prob = make_problem(rc.problem);
    if ((p && *p != prob.p) || (q && *q != prob.q))
      throw UsageError("config: p/q disagree with problem '" + rc.problem + "'");
    rc.p = prob.p;
    rc.q = prob.q;
  }
  if (auto r = get_opt_size(doc, "record_every")) rc.record_every = *r;
  if (auto r = get_opt_size(doc, "reference_size")) rc.reference_size = *r;
  if (rc.record_every == 0) throw UsageError("config: record_every must be >= 1");
  if (rc.reference_size == 0) throw UsageError("config: reference_size must be >= 1");
  rc.engine.validate(rc.p, rc.q);
  return rc;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw UsageError("config " + path.string() + ": " + e.what());
  }
  return parse_run_config(doc);
}

namespace {

json points_to_json(const PointSet& pts) {
  json arr = json::array();
  for (std::size_t i = 0; i < pts.size(); ++i) arr.push_back(pts.row(i));
  return arr;
}

PointSet points_from_json(const json& arr, std::size_t dim) {
  PointSet out(dim);
  for (const auto& row : arr) out.push_back(row.get<std::vector<double>>());
  return out;
}

json trace_entry_to_json(const TraceEntry& t) {
  return {{"i_star", t.i_star}, {"fill", t.fill}, {"fallback", t.fallback}};
}

TraceEntry trace_entry_from_json(const json& j) {
  return {j.at("i_star").get<std::size_t>(), j.at("fill").get<double>(),
          j.value("fallback", false)};
}

}  // namespace

json snapshot_to_json(const EngineSnapshot& s) {
  json j;
  j["p"] = s.p;
  j["q"] = s.q;
  j["config"] = engine_config_to_json(s.config);
  j["inputs"] = points_to_json(s.inputs);
  j["outputs"] = points_to_json(s.outputs);
  j["pending"] = s.pending ? json(*s.pending) : json(nullptr);
  j["pending_trace"] = s.pending_trace ? trace_entry_to_json(*s.pending_trace) : json(nullptr);
  j["rng"] = s.rng;
  json trace = json::array();
  for (const auto& t : s.trace) trace.push_back(trace_entry_to_json(t));
  j["trace"] = std::move(trace);
  j["stopped"] = s.stopped;
  return j;
}

EngineSnapshot snapshot_from_json(const json& j) {
  EngineSnapshot s;
  try {
    s.p = j.at("p").get<std::size_t>();
    s.q = j.at("q").get<std::size_t>();
    s.config = engine_config_from_json(j.at("config"));
    s.inputs = points_from_json(j.at("inputs"), s.p);
    s.outputs = points_from_json(j.at("outputs"), s.q);
    if (!j.at("pending").is_null()) s.pending = j.at("pending").get<std::vector<double>>();
    if (j.contains("pending_trace") && !j.at("pending_trace").is_null())
      s.pending_trace = trace_entry_from_json(j.at("pending_trace"));
    s.rng = j.at("rng").get<std::string>();
    for (const auto& t : j.at("trace")) s.trace.push_back(trace_entry_from_json(t));
    s.stopped = j.value("stopped", false);
  } catch (const json::exception& e) {
    throw UsageError(std::string("state: ") + e.what());
  }
  return s;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string design_csv(const Design& design) {
  std::string out;
  for (std::size_t j = 0; j < design.p; ++j)
    out += (j ? ",x" : "x") + std::to_string(j + 1);
  for (std::size_t j = 0; j < design.q; ++j)
    out += ",y" + std::to_string(j + 1);
  out += '\n';
  for (std::size_t i = 0; i < design.size(); ++i) {
    for (std::size_t j = 0; j < design.p; ++j) {
      if (j) out += ',';
      out += format_double(design.inputs[i][j]);
    }
    for (std::size_t j = 0; j < design.q; ++j) {
      out += ',';
      out += format_double(design.outputs[i][j]);
    }
    out += '\n';
  }
  return out;
}

void write_design_csv(const std::filesystem::path& path, const Design& design) {
  write_file_atomic(path, design_csv(design));
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(line);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

double parse_number(const std::string& field, const std::string& where) {
  const std::string t = trim(field);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(v))
    throw UsageError(where + ": bad number '" + t + "'");
  return v;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

Table read_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path.string());
  Table t;
  std::string line;
  if (!std::getline(in, line)) throw UsageError(path.string() + ": empty file");
  for (auto& h : split(line, ',')) t.header.push_back(trim(h));
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != t.header.size())
      throw UsageError(path.string() + ":" + std::to_string(lineno) +
                       ": expected " + std::to_string(t.header.size()) + " fields");
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields)
      row.push_back(parse_number(f, path.string() + ":" + std::to_string(lineno)));
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace

Design read_design_csv(const std::filesystem::path& path) {
  const auto t = read_table(path);
  std::size_t p = 0;
  std::size_t q = 0;
  for (const auto& h : t.header) {
    if (!h.empty() && h[0] == 'x' && q == 0) ++p;
    else if (!h.empty() && h[0] == 'y') ++q;
    else throw UsageError(path.string() + ": header must be x1..xp,y1..yq");
  }
  Design d(p, q);
  for (const auto& row : t.rows)
    d.append(std::span<const double>(row.data(), p),
             std::span<const double>(row.data() + p, q));
  return d;
}

PointSet read_points_csv(const std::filesystem::path& path) {
  const auto t = read_table(path);
  std::vector<std::size_t> cols;
  for (std::size_t c = 0; c < t.header.size(); ++c)
    if (!t.header[c].empty() && t.header[c][0] == 'y') cols.push_back(c);
  if (cols.empty())
    for (std::size_t c = 0; c < t.header.size(); ++c) cols.push_back(c);
  PointSet out(cols.size());
  std::vector<double> pt(cols.size());
  for (const auto& row : t.rows) {
    for (std::size_t k = 0; k < cols.size(); ++k) pt[k] = row[cols[k]];
    out.push_back(pt);
  }
  return out;
}

void write_points_csv(const std::filesystem::path& path, const PointSet& points,
                      const std::string& prefix) {
  std::string out;
  for (std::size_t j = 0; j < points.dim(); ++j)
    out += (j ? "," : "") + prefix + std::to_string(j + 1);
  out += '\n';
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < points.dim(); ++j) {
      if (j) out += ',';
      out += format_double(points[i][j]);
    }
    out += '\n';
  }
  write_file_atomic(path, out);
}

void write_file_atomic(const std::filesystem::path& path, const std::string& text) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot write " + tmp.string());
    out << text;
    if (!out) throw UsageError("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace osfd
