// report.hpp — the universal check record plus deterministic CSV/JSON
// emission.  All floating-point output goes through fmt_g17 (17 significant
// digits, '.' decimal, no locale), so identical inputs give byte-identical
// files.

#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace lpspec {

// One named check: measured vs expected at a tolerance.  `claim` states the
// mathematical inequality or identity being verified, so every emitted row
// records what it certifies.
struct CheckReport {
    std::string name;
    std::string claim;
    double measured = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    double runtime_ms = 0.0;
    std::string note;

    static CheckReport against_value(std::string name, std::string claim, double measured,
                                     double expected, double tolerance);
    // bound checks: pass iff measured <= bound
    static CheckReport against_bound(std::string name, std::string claim, double measured,
                                     double bound);
};

// %.17g with classic locale.
std::string fmt_g17(double v);

// Minimal JSON writer: objects/arrays assembled in insertion order, numbers
// via fmt_g17.  Write-only (the toolkit never parses JSON).
class JsonWriter {
public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();
    JsonWriter& key(const std::string& k);
    JsonWriter& value(double v);
    JsonWriter& value(int v);
    JsonWriter& value(long long v);
    JsonWriter& value(bool v);
    JsonWriter& value(const std::string& v);
    JsonWriter& field(const std::string& k, double v) { return key(k).value(v); }
    JsonWriter& field(const std::string& k, int v) { return key(k).value(v); }
    JsonWriter& field(const std::string& k, bool v) { return key(k).value(v); }
    JsonWriter& field(const std::string& k, const std::string& v) { return key(k).value(v); }
    JsonWriter& raw_json(const std::string& verbatim);  // splice a prebuilt value
    std::string str() const { return out_.str(); }

private:
    void comma();
    std::ostringstream out_;
    std::vector<bool> first_in_scope_{true};
    bool pending_key_ = false;
};

std::string to_json(const CheckReport& r);
std::string to_json(const std::vector<CheckReport>& rs);

// CSV helpers: header + rows of fmt_g17 cells.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);
    void row(const std::vector<double>& cells);
    void raw_row(const std::vector<std::string>& cells);
    std::string str() const { return out_.str(); }

private:
    std::ostringstream out_;
    std::size_t width_;
};

// Writes `content` to `path` ("-" means stdout).
void write_text_file(const std::string& path, const std::string& content);

}  // namespace lpspec
