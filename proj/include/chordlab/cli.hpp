#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace chordlab {

inline constexpr std::uint64_t kDefaultSeed = 20240601;

// Table-shaped command output; rendered as table, json, csv or bfile.
struct OutputRecord {
    std::string command;
    std::vector<std::pair<std::string, std::string>> parameters;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};
std::string render(const OutputRecord& r, const std::string& format);
// Inverse of the json rendering.
OutputRecord parse_json_record(const std::string& text);

struct CheckResult {
    std::string suite, name;
    bool ok = false;
    std::string detail;
};
const std::vector<std::string>& suite_names();  // chord, bell, diffeo, yukawa
std::vector<CheckResult> run_suite(const std::string& suite, int order, std::uint64_t seed);

// Series index = b-file index + shift; indices below first_index are skipped.
struct OeisOffset {
    std::string series, sequence;
    int shift = 0;
    int first_index = 0;
    std::string note;
};
const std::vector<OeisOffset>& oeis_offsets();

struct BfileEntry {
    long index;
    std::string value;
};
// Skips blank lines and lines starting with '#'. Throws std::runtime_error on
// an unreadable file and std::invalid_argument on a malformed line.
std::vector<BfileEntry> read_bfile(const std::string& path);

// Enumeration guard, from CHORDLAB_MAX_N when set.
int enumeration_limit();

// Runs the command line (args exclude the program name). Returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chordlab
