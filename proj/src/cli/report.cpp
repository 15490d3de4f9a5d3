#include "volprod/cli/report.hpp"

#include <iomanip>
#include <sstream>

namespace volprod::cli {

Json to_json(const Vector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Json to_json(const Tolerances& t) {
  Json j;
  j["tol_orth"] = t.tol_orth;
  j["tol_geom"] = t.tol_geom;
  j["tol_quad"] = t.tol_quad;
  j["quad_subdivisions"] = t.quad_subdivisions;
  j["mc_samples"] = t.mc_samples;
  return j;
}

namespace {
const char* status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped";
  }
  return "";
}

std::string csv_number(const std::optional<double>& v) {
  if (!v) return "";
  std::ostringstream out;
  out << std::setprecision(17) << *v;
  return out.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}
}  // namespace

Report::Report(std::string command, std::vector<std::string> arguments, std::uint64_t seed, const Tolerances& tol)
    : command_(std::move(command)), arguments_(std::move(arguments)), seed_(seed), tol_(tol) {}

int Report::passed() const {
  int c = 0;
  for (const auto& r : records_) c += r.status == Status::Pass;
  return c;
}

int Report::failed() const {
  int c = 0;
  for (const auto& r : records_) c += r.status == Status::Fail;
  return c;
}

int Report::skipped() const {
  int c = 0;
  for (const auto& r : records_) c += r.status == Status::Skipped;
  return c;
}

Json Report::json() const {
  Json j;
  j["tool"] = "volprod";
  j["command"] = command_;
  j["arguments"] = arguments_;
  j["seed"] = seed_;
  j["tolerances"] = to_json(tol_);
  Json recs = Json::array();
  for (const auto& r : records_) {
    Json x;
    x["name"] = r.name;
    x["tag"] = r.tag;
    x["status"] = status_name(r.status);
    x["pass"] = r.status != Status::Fail;
    if (r.value) x["value"] = *r.value;
    if (r.bound) x["bound"] = *r.bound;
    if (r.margin) x["margin"] = *r.margin;
    x["values"] = r.values;
    if (!r.note.empty()) x["note"] = r.note;
    recs.push_back(std::move(x));
  }
  j["records"] = std::move(recs);
  j["summary"] = {{"total", total()}, {"passed", passed()}, {"failed", failed()}, {"skipped", skipped()}};
  return j;
}

std::string Report::csv() const {
  std::ostringstream out;
  out << "name,tag,status,value,bound,margin\n";
  for (const auto& r : records_) {
    out << csv_field(r.name) << ',' << csv_field(r.tag) << ',' << status_name(r.status) << ','
        << csv_number(r.value) << ',' << csv_number(r.bound) << ',' << csv_number(r.margin) << '\n';
  }
  return out.str();
}

}  // namespace volprod::cli
