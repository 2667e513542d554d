#include "lpspec/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace lpspec {

CheckReport CheckReport::against_value(std::string name, std::string claim, double measured,
                                       double expected, double tolerance) {
    CheckReport r;
    r.name = std::move(name);
    r.claim = std::move(claim);
    r.measured = measured;
    r.expected = expected;
    r.tolerance = tolerance;
    r.pass = std::isfinite(measured) && std::abs(measured - expected) <= tolerance;
    return r;
}

CheckReport CheckReport::against_bound(std::string name, std::string claim, double measured,
                                       double bound) {
    CheckReport r;
    r.name = std::move(name);
    r.claim = std::move(claim);
    r.measured = measured;
    r.expected = bound;
    r.tolerance = 0.0;
    r.pass = std::isfinite(measured) && measured <= bound;
    return r;
}

std::string fmt_g17(double v) {
    if (v == 0.0) return "0";  // normalize the sign of zero
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void JsonWriter::comma() {
    if (pending_key_) {
        pending_key_ = false;
        return;
    }
    if (!first_in_scope_.back()) out_ << ",";
    first_in_scope_.back() = false;
}

JsonWriter& JsonWriter::begin_object() {
    comma();
    out_ << "{";
    first_in_scope_.push_back(true);
    return *this;
}
JsonWriter& JsonWriter::end_object() {
    out_ << "}";
    first_in_scope_.pop_back();
    return *this;
}
JsonWriter& JsonWriter::begin_array() {
    comma();
    out_ << "[";
    first_in_scope_.push_back(true);
    return *this;
}
JsonWriter& JsonWriter::end_array() {
    out_ << "]";
    first_in_scope_.pop_back();
    return *this;
}
JsonWriter& JsonWriter::key(const std::string& k) {
    comma();
    out_ << "\"" << k << "\":";
    pending_key_ = true;
    return *this;
}
JsonWriter& JsonWriter::value(double v) {
    comma();
    if (std::isfinite(v))
        out_ << fmt_g17(v);
    else if (std::isnan(v))
        out_ << "\"nan\"";
    else
        out_ << (v > 0 ? "\"inf\"" : "\"-inf\"");
    return *this;
}
JsonWriter& JsonWriter::value(int v) {
    comma();
    out_ << v;
    return *this;
}
JsonWriter& JsonWriter::value(long long v) {
    comma();
    out_ << v;
    return *this;
}
JsonWriter& JsonWriter::value(bool v) {
    comma();
    out_ << (v ? "true" : "false");
    return *this;
}
JsonWriter& JsonWriter::raw_json(const std::string& verbatim) {
    comma();
    out_ << verbatim;
    return *this;
}

JsonWriter& JsonWriter::value(const std::string& v) {
    comma();
    out_ << "\"";
    for (char c : v) {
        switch (c) {
            case '"': out_ << "\\\""; break;
            case '\\': out_ << "\\\\"; break;
            case '\n': out_ << "\\n"; break;
            case '\t': out_ << "\\t"; break;
            default: out_ << c;
        }
    }
    out_ << "\"";
    return *this;
}

static void report_fields(JsonWriter& w, const CheckReport& r) {
    w.field("name", r.name)
        .field("claim", r.claim)
        .field("measured", r.measured)
        .field("expected", r.expected)
        .field("tolerance", r.tolerance)
        .field("pass", r.pass)
        .field("runtime_ms", r.runtime_ms);
    if (!r.note.empty()) w.field("note", r.note);
}

std::string to_json(const CheckReport& r) {
    JsonWriter w;
    w.begin_object();
    report_fields(w, r);
    w.end_object();
    return w.str();
}

std::string to_json(const std::vector<CheckReport>& rs) {
    JsonWriter w;
    w.begin_array();
    for (const auto& r : rs) {
        w.begin_object();
        report_fields(w, r);
        w.end_object();
    }
    w.end_array();
    return w.str();
}

CsvWriter::CsvWriter(std::vector<std::string> header) : width_(header.size()) {
    for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
    out_ << "\n";
}

void CsvWriter::row(const std::vector<double>& cells) {
    if (cells.size() != width_) throw std::invalid_argument("CsvWriter: row width mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << fmt_g17(cells[i]);
    out_ << "\n";
}

void CsvWriter::raw_row(const std::vector<std::string>& cells) {
    if (cells.size() != width_) throw std::invalid_argument("CsvWriter: row width mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
    if (path == "-" || path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << content;
}

}  // namespace lpspec
