#include "knaster/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace knaster {

namespace {

std::string located(const std::string& source, int line, int column, const std::string& message) {
  std::ostringstream os;
  os << source << ':' << line << ':' << column << ": " << message;
  return os.str();
}

void line_column(const std::string& text, std::size_t offset, int& line, int& column) {
  line = 1;
  column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
}

using nlohmann::json;

Vec3 vec3_field(const json& v, const std::string& what) {
  if (!v.is_array() || v.size() != 3) throw InputError(what + ": expected an array of 3 numbers");
  Vec3 out;
  for (int i = 0; i < 3; ++i) {
    if (!v[i].is_number()) throw InputError(what + ": expected an array of 3 numbers");
    out[i] = v[i].get<double>();
    if (!std::isfinite(out[i])) throw InputError(what + ": non-finite value");
  }
  return out;
}

std::vector<Vec3> points_field(const json& doc) {
  if (!doc.contains("points") || !doc["points"].is_array())
    throw InputError("field \"points\": expected an array of [x, y, z] triples");
  std::vector<Vec3> pts;
  for (std::size_t i = 0; i < doc["points"].size(); ++i)
    pts.push_back(vec3_field(doc["points"][i], "points[" + std::to_string(i) + "]"));
  return pts;
}

}  // namespace

InputError::InputError(const std::string& source, int line, int column, const std::string& message)
    : std::runtime_error(located(source, line, column, message)), line_(line), column_(column) {}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Body parse_body(const std::string& text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    int line = 0, column = 0;
    line_column(text, e.byte > 0 ? e.byte - 1 : 0, line, column);
    throw InputError(source, line, column, "malformed JSON");
  }
  try {
    if (!doc.is_object() || !doc.contains("type") || !doc["type"].is_string())
      throw InputError("expected an object with a string field \"type\"");
    const std::string type = doc["type"].get<std::string>();
    if (type == "ellipsoid") {
      if (!doc.contains("coeffs")) throw InputError("field \"coeffs\" is required for an ellipsoid");
      const Vec3 coeffs = vec3_field(doc["coeffs"], "field \"coeffs\"");
      Vec3 center = Vec3::Zero();
      if (doc.contains("center")) center = vec3_field(doc["center"], "field \"center\"");
      Rotation r;
      if (doc.contains("quaternion")) {
        const json& q = doc["quaternion"];
        if (!q.is_array() || q.size() != 4) throw InputError("field \"quaternion\": expected [w, x, y, z]");
        for (const json& c : q)
          if (!c.is_number()) throw InputError("field \"quaternion\": expected [w, x, y, z]");
        const Eigen::Quaterniond quat(q[0].get<double>(), q[1].get<double>(), q[2].get<double>(),
                                      q[3].get<double>());
        if (!(quat.norm() > 0.0)) throw InputError("field \"quaternion\": zero quaternion");
        r = Rotation::from_quaternion(quat);
      }
      return Ellipsoid(coeffs, r, center);
    }
    if (type == "pointcloud") {
      bool symmetrize = false;
      if (doc.contains("symmetrize")) {
        if (!doc["symmetrize"].is_boolean()) throw InputError("field \"symmetrize\": expected a boolean");
        symmetrize = doc["symmetrize"].get<bool>();
      }
      return PointCloudBody(points_field(doc), symmetrize);
    }
    if (type == "set") return GeneralSet(points_field(doc));
    throw InputError("unknown body type \"" + type + "\"");
  } catch (const InputError& e) {
    throw InputError(source + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(source + ": " + e.what());
  }
}

Body load_body(const std::string& path) { return parse_body(read_file(path), path); }

std::vector<Vec3> parse_points_csv(const std::string& text, const std::string& source) {
  std::vector<Vec3> pts;
  std::istringstream in(text);
  std::string row;
  int line = 0;
  while (std::getline(in, row)) {
    ++line;
    if (!row.empty() && row.back() == '\r') row.pop_back();
    const std::size_t first = row.find_first_not_of(" \t");
    if (first == std::string::npos || row[first] == '#') continue;

    Vec3 p;
    std::size_t pos = 0;
    for (int k = 0; k < 3; ++k) {
      std::size_t end = row.find(',', pos);
      if (k < 2 && end == std::string::npos)
        throw InputError(source, line, static_cast<int>(row.size()) + 1, "expected 3 comma-separated values");
      if (k == 2) {
        if (end != std::string::npos)
          throw InputError(source, line, static_cast<int>(end) + 1, "expected exactly 3 values");
        end = row.size();
      }
      std::size_t b = pos, e = end;
      while (b < e && (row[b] == ' ' || row[b] == '\t')) ++b;
      while (e > b && (row[e - 1] == ' ' || row[e - 1] == '\t')) --e;
      const char* lo = row.data() + b;
      const char* hi = row.data() + e;
      if (b < e && *lo == '+') ++lo;
      const auto [ptr, ec] = std::from_chars(lo, hi, p[k]);
      if (b == e || ec != std::errc() || ptr != hi || !std::isfinite(p[k]))
        throw InputError(source, line, static_cast<int>(b) + 1, "invalid number");
      pos = end + 1;
    }
    pts.push_back(p);
  }
  if (pts.empty()) throw InputError(source + ": no points");
  return pts;
}

std::vector<Vec3> load_points_csv(const std::string& path) { return parse_points_csv(read_file(path), path); }

}  // namespace knaster
