#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hcox::cli {

enum Exit : int { Ok = 0, VerificationFailed = 1, InputFailure = 2 };

struct RunConfig {
  std::string command;
  std::string graph = "n=2;m01=4;m12=4;m02=4";
  std::vector<std::string> t_list;  // numbers or multiples of th, e.g. "th", "2th", "th/4"
  int depth = 12;
  std::optional<int> body_depth;  // defaults to min(depth, 12)
  std::optional<std::array<double, 2>> window;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format;
  std::size_t max_elements = 5'000'000;
  std::string suite = "all";
  std::string x;  // barycentric, comma separated, fractions allowed
  std::string y;
  std::string a;  // matrix files for equiv
  std::string b;
  int samples = 0;  // 0 keeps each command's default
  unsigned threads = 0;

  void validate() const;
};

// Flags override values loaded from --config.
RunConfig parse_args(int argc, const char* const* argv);
void apply_json(RunConfig& config, const std::string& json_text);

int run(const RunConfig& config, std::ostream& out, std::ostream& err);
// Parses and runs, mapping every error to an exit status.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// "th", "2th", "th/4", "2*th" or a plain number, with th the hyperbolic parameter.
double parse_parameter(const std::string& token, double th);
std::vector<double> parse_list(const std::string& text);

}  // namespace hcox::cli
