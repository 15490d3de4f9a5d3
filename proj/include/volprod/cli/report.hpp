#pragma once

#include "volprod/geometry.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace volprod::cli {

using Json = nlohmann::ordered_json;

Json to_json(const Vector& v);
Json to_json(const Tolerances& t);

enum class Status { Pass, Fail, Skipped };

struct Record {
  std::string name;
  std::string tag;  // which inequality or identity the record checks
  Status status = Status::Pass;
  std::optional<double> value;
  std::optional<double> bound;
  std::optional<double> margin;
  Json values = Json::object();
  std::string note;
};

/// Machine-readable run report; identical inputs give identical bytes.
class Report {
 public:
  Report(std::string command, std::vector<std::string> arguments, std::uint64_t seed, const Tolerances& tol);

  void add(Record r) { records_.push_back(std::move(r)); }
  const std::vector<Record>& records() const { return records_; }
  int total() const { return static_cast<int>(records_.size()); }
  int passed() const;
  int failed() const;
  int skipped() const;

  Json json() const;
  std::string csv() const;

 private:
  std::string command_;
  std::vector<std::string> arguments_;
  std::uint64_t seed_;
  Tolerances tol_;
  std::vector<Record> records_;
};

}  // namespace volprod::cli
