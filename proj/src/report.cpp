#include "catperc/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>

namespace catperc {

namespace {

template <typename T>
std::string cell(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_floating_point_v<T>) {
    return format_number(*v);
  } else {
    return std::to_string(*v);
  }
}

HeaderLines config_lines(const RunResult& r, const HeaderLines& extra) {
  HeaderLines lines = extra;
  for (auto& kv : r.spec.describe()) lines.push_back(kv);
  lines.emplace_back("spec_hash", r.spec_hash);
  lines.emplace_back("complete", r.complete ? "true" : "false");
  if (!r.complete) lines.emplace_back("note", r.note);
  return lines;
}

nlohmann::ordered_json number(double x) {
  if (std::isfinite(x)) return x;
  return format_number(x);
}

template <typename T>
nlohmann::ordered_json optional_json(const std::optional<T>& v) {
  if (!v) return nullptr;
  if constexpr (std::is_floating_point_v<T>) {
    return number(*v);
  } else {
    return *v;
  }
}

// x-axis of a chart: whichever parameter varies between rows.
double x_of(const ResultRow& row, char axis) {
  switch (axis) {
    case 'p':
      return row.p.value_or(0.0);
    case 'L':
      return row.L.value_or(0);
    case 'k':
      return row.n0.value_or(0);
    default:
      return row.n.value_or(0);
  }
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv(std::ostream& out, const RunResult& r, const HeaderLines& extra) {
  for (const auto& [k, v] : config_lines(r, extra)) out << "# " << k << ": " << v << '\n';
  out << "experiment,n,L,p,q,n0,estimate,stderr,reps,truncated,seed\n";
  for (const auto& row : r.rows) {
    out << row.experiment << ',' << cell(row.n) << ',' << cell(row.L) << ',' << cell(row.p) << ',' << cell(row.q) << ','
        << cell(row.n0) << ',' << format_number(row.estimate) << ',' << format_number(row.std_error) << ',' << row.reps
        << ',' << row.truncated << ',' << row.seed << '\n';
  }
}

void write_json(std::ostream& out, const RunResult& r, const HeaderLines& extra) {
  nlohmann::ordered_json doc;
  auto& config = doc["config"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : config_lines(r, extra)) config[k] = v;
  doc["complete"] = r.complete;
  auto& rows = doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    nlohmann::ordered_json j;
    j["experiment"] = row.experiment;
    j["n"] = optional_json(row.n);
    j["L"] = optional_json(row.L);
    j["p"] = optional_json(row.p);
    j["q"] = optional_json(row.q);
    j["n0"] = optional_json(row.n0);
    j["estimate"] = number(row.estimate);
    j["stderr"] = number(row.std_error);
    j["reps"] = row.reps;
    j["truncated"] = row.truncated;
    j["seed"] = row.seed;
    rows.push_back(std::move(j));
  }
  // nlohmann prints doubles with the shortest round-trip form, which agrees
  // with the CSV's 17-digit form as a value.
  out << doc.dump(2) << '\n';
}

void write_svg(std::ostream& out, const RunResult& r) {
  std::map<std::string, std::vector<const ResultRow*>> groups;
  std::vector<std::string> order;
  for (const auto& row : r.rows) {
    if (!groups.count(row.experiment)) order.push_back(row.experiment);
    groups[row.experiment].push_back(&row);
  }
  const double w = 640, h = 360, margin = 50;
  const double total_h = h * static_cast<double>(std::max<std::size_t>(order.size(), 1));
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << total_h << "\">\n";
  double top = 0;
  for (const auto& name : order) {
    const auto& rows = groups[name];
    char axis = 'n';
    auto varies = [&](auto get) {
      for (const auto* row : rows) {
        if (get(*row) != get(*rows.front())) return true;
      }
      return false;
    };
    if (varies([](const ResultRow& x) { return x.p; })) {
      axis = 'p';
    } else if (varies([](const ResultRow& x) { return x.L; })) {
      axis = 'L';
    } else if (varies([](const ResultRow& x) { return x.n0; })) {
      axis = 'k';
    }
    std::vector<std::array<double, 3>> pts;  // x, y, err
    for (const auto* row : rows) {
      if (std::isfinite(row->estimate)) {
        pts.push_back({x_of(*row, axis), row->estimate, std::isfinite(row->std_error) ? row->std_error : 0.0});
      }
    }
    std::sort(pts.begin(), pts.end());
    out << "<g transform=\"translate(0," << top << ")\">\n";
    out << "<text x=\"" << margin << "\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">" << name << "</text>\n";
    out << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << w - 2 * margin << "\" height=\""
        << h - 2 * margin << "\" fill=\"none\" stroke=\"#999\"/>\n";
    if (!pts.empty()) {
      double x0 = pts.front()[0], x1 = pts.back()[0], y0 = INFINITY, y1 = -INFINITY;
      for (const auto& p : pts) {
        y0 = std::min(y0, p[1] - p[2]);
        y1 = std::max(y1, p[1] + p[2]);
      }
      if (x1 == x0) x1 = x0 + 1;
      if (y1 == y0) y1 = y0 + 1;
      auto sx = [&](double x) { return margin + (x - x0) / (x1 - x0) * (w - 2 * margin); };
      auto sy = [&](double y) { return h - margin - (y - y0) / (y1 - y0) * (h - 2 * margin); };
      out << "<polygon fill=\"#9ecae1\" fill-opacity=\"0.5\" stroke=\"none\" points=\"";
      for (const auto& p : pts) out << sx(p[0]) << ',' << sy(p[1] + p[2]) << ' ';
      for (auto it = pts.rbegin(); it != pts.rend(); ++it) out << sx((*it)[0]) << ',' << sy((*it)[1] - (*it)[2]) << ' ';
      out << "\"/>\n<polyline fill=\"none\" stroke=\"#08519c\" stroke-width=\"2\" points=\"";
      for (const auto& p : pts) out << sx(p[0]) << ',' << sy(p[1]) << ' ';
      out << "\"/>\n";
      out << "<text x=\"" << margin << "\" y=\"" << h - 15 << "\" font-family=\"sans-serif\" font-size=\"11\">"
          << (axis == 'k' ? "n0" : std::string(1, axis)) << " in [" << format_number(x0) << ", " << format_number(x1)
          << "], estimate in [" << format_number(y0) << ", " << format_number(y1) << "]</text>\n";
    }
    out << "</g>\n";
    top += h;
  }
  out << "</svg>\n";
}

}  // namespace catperc
