#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

namespace omlkit {

/// Fixed-width float formatting (12 significant digits) so that reports are
/// byte-identical across runs.
inline std::string fmt_double(double x) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

struct ReportStep {
  std::string op;      // the operation that produced the check
  std::string claim;   // what was checked
  bool pass = false;
  std::string detail;  // witness or computed value
};

struct Report {
  std::string demo_name;
  std::string anchor;  // stable topic tag
  std::vector<ReportStep> steps;

  void add(std::string op, std::string claim, bool pass, std::string detail = "") {
    steps.push_back({std::move(op), std::move(claim), pass, std::move(detail)});
  }

  [[nodiscard]] bool verdict() const {
    for (const auto& s : steps) {
      if (!s.pass) return false;
    }
    return true;
  }

  [[nodiscard]] std::string render_text() const {
    std::string out = demo_name + " [" + anchor + "]\n";
    for (const auto& s : steps) {
      out += s.pass ? "  [ok]   " : "  [FAIL] ";
      out += s.op + ": " + s.claim;
      if (!s.detail.empty()) out += "  -- " + s.detail;
      out += "\n";
    }
    out += std::string("verdict: ") + (verdict() ? "pass" : "fail") + "\n";
    return out;
  }

  [[nodiscard]] nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json steps_json = nlohmann::ordered_json::array();
    for (const auto& s : steps) {
      steps_json.push_back({{"op", s.op}, {"claim", s.claim}, {"pass", s.pass}, {"detail", s.detail}});
    }
    return {{"demo", demo_name},
            {"anchor", anchor},
            {"steps", std::move(steps_json)},
            {"verdict", verdict() ? "pass" : "fail"}};
  }
};

}  // namespace omlkit
