#pragma once

#include <cstdint>
#include <iosfwd>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "covtrans/group.hpp"

namespace covtrans::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kPrecondition = 2,
  kAttemptsExhausted = 3,
  kBudgetExceeded = 4,
  kIntegrity = 5,
  kVerificationFailed = 6,
  kSoundness = 7,
};

// Everything that determines a command's output. Serialized into every JSON
// document the CLI writes, so a document can be regenerated from itself.
struct RunConfig {
  std::string command;     // e.g. "covering construct", "tower build"
  std::string descriptor;  // group ("C1024") or tower ("tower:20,1024")
  unsigned k = 2;
  std::optional<std::size_t> l;
  std::optional<std::uint64_t> seed;
  unsigned max_attempts = 100;
  std::string mode = "auto";  // auto | exhaustive | sampled:<m>
  bool family = false;        // covering construct: emit the intersecting family
  std::uint64_t samples = 1000;
  double fullness = 1.0;
  std::optional<std::size_t> size;  // covering shrink: random set size
  std::vector<Element> elements;    // explicit set (shrink, translate, dim)
  std::optional<unsigned> depth;
  std::string groups;          // cov-table: comma-separated descriptors
  std::string family_sweep;    // cov-table: cyclic | dihedral
  std::string n_range;         // cov-table: "a-b"
  std::string k_list = "1,2";  // cov-table
  std::string input;           // verify / translate: input document path
  std::string format = "json";
  std::string out;       // not part of the serialized config
  unsigned threads = 0;  // not part of the serialized config
};

nlohmann::ordered_json to_json(const RunConfig& config);
RunConfig config_from_json(const nlohmann::json& doc);

int execute(const RunConfig& config, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace covtrans::cli
