#pragma once

// Line-delimited JSON records of verification runs.

#include <chrono>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace cmforge::report {

struct Record {
    std::string suite;
    // Integer parameters in insertion order.
    std::vector<std::pair<std::string, long>> params;
    bool pass = false;
    double residual = 0;
    double seconds = 0;
    // Set when the check raised instead of returning.
    std::string error;

    friend bool operator==(const Record&, const Record&) = default;
};

// One JSON object: {"suite":...,"params":{...},"pass":...,"residual":...,"seconds":...}
// plus "error" when non-empty.
std::string to_json_line(const Record& r);
// Throws std::invalid_argument on malformed input.
Record from_json_line(const std::string& line);

class Reporter {
public:
    explicit Reporter(std::ostream& out) : out_(out) {}
    void emit(const Record& r);
    bool all_pass() const { return failures_ == 0; }
    long count() const { return count_; }
    long failures() const { return failures_; }

private:
    std::ostream& out_;
    long count_ = 0;
    long failures_ = 0;
};

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

} // namespace cmforge::report
