#include "pptlab/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace pptlab {

JsonWriter& JsonWriter::begin_object() {
    separator();
    out_ += '{';
    need_comma_.push_back(false);
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    out_ += '}';
    need_comma_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::begin_array() {
    separator();
    out_ += '[';
    need_comma_.push_back(false);
    return *this;
}

JsonWriter& JsonWriter::end_array() {
    out_ += ']';
    need_comma_.pop_back();
    return *this;
}

void JsonWriter::separator() {
    if (pending_key_) {
        pending_key_ = false;
        return;
    }
    if (!need_comma_.empty()) {
        if (need_comma_.back()) out_ += ',';
        need_comma_.back() = true;
    }
}

JsonWriter& JsonWriter::key(const std::string& k) {
    separator();
    out_ += '"';
    out_ += k;
    out_ += "\":";
    pending_key_ = true;
    return *this;
}

std::string format_double(double v) {
    if (!std::isfinite(v)) throw bad_config("refusing to serialize a non-finite number");
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

JsonWriter& JsonWriter::value(double v) {
    separator();
    out_ += format_double(v);
    return *this;
}

JsonWriter& JsonWriter::value(std::size_t v) {
    separator();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::value(int v) {
    separator();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::value(bool v) {
    separator();
    out_ += v ? "true" : "false";
    return *this;
}

JsonWriter& JsonWriter::value(const char* v) { return value(std::string(v)); }

JsonWriter& JsonWriter::value(const std::string& v) {
    separator();
    out_ += '"';
    for (char c : v) {
        switch (c) {
            case '"': out_ += "\\\""; break;
            case '\\': out_ += "\\\\"; break;
            case '\n': out_ += "\\n"; break;
            case '\t': out_ += "\\t"; break;
            case '\r': out_ += "\\r"; break;
            default: out_ += c;
        }
    }
    out_ += '"';
    return *this;
}

JsonWriter& JsonWriter::raw(const std::string& fragment) {
    separator();
    out_ += fragment;
    return *this;
}

void write_matrix(JsonWriter& w, const ComplexMatrix& m) {
    w.begin_object();
    w.key("rows").value(m.rows());
    w.key("cols").value(m.cols());
    w.key("re").begin_array();
    for (const auto& e : m.data()) w.value(e.real());
    w.end_array();
    w.key("im").begin_array();
    for (const auto& e : m.data()) w.value(e.imag());
    w.end_array();
    w.end_object();
}

void write_vector(JsonWriter& w, const std::vector<cplx>& v) {
    ComplexMatrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    write_matrix(w, m);
}

namespace {

using nlohmann::json;

json parse_or_throw(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw bad_config(std::string("malformed JSON: ") + e.what());
    }
}

ComplexMatrix matrix_from_json(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("re") ||
        !j.contains("im"))
        throw bad_config(where + ": expected {rows, cols, re, im}");
    const std::size_t rows = j.at("rows").get<std::size_t>();
    const std::size_t cols = j.at("cols").get<std::size_t>();
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (!re.is_array() || !im.is_array() || re.size() != rows * cols || im.size() != rows * cols)
        throw bad_config(where + ": re/im arrays must have length rows*cols");
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows * cols; ++i) {
        const double a = re[i].get<double>();
        const double b = im[i].get<double>();
        if (!std::isfinite(a) || !std::isfinite(b))
            throw bad_config(where + ": non-finite entry at index " + std::to_string(i));
        m.data()[i] = cplx(a, b);
    }
    return m;
}

} // namespace

ComplexMatrix parse_matrix_json(const std::string& text) {
    return matrix_from_json(parse_or_throw(text), "matrix");
}

BipartiteState parse_state_json(const std::string& text) {
    json j = parse_or_throw(text);
    if (!j.is_object() || !j.contains("split") || !j.contains("rho"))
        throw bad_config("state: expected {split:{dA,dB}, rho}");
    const auto& sp = j.at("split");
    if (!sp.contains("dA") || !sp.contains("dB"))
        throw bad_config("state.split: expected {dA, dB}");
    BipartiteState s;
    s.split.dA = sp.at("dA").get<std::size_t>();
    s.split.dB = sp.at("dB").get<std::size_t>();
    s.rho = matrix_from_json(j.at("rho"), "state.rho");
    return s;
}

LinearMap parse_map_json(const std::string& text) {
    json j = parse_or_throw(text);
    if (!j.is_object() || !j.contains("dim_in") || !j.contains("dim_out") || !j.contains("choi"))
        throw bad_config("map: expected {dim_in, dim_out, choi}");
    return map_from_choi(j.at("dim_in").get<std::size_t>(), j.at("dim_out").get<std::size_t>(),
                         matrix_from_json(j.at("choi"), "map.choi"));
}

StormerPair parse_pair_json(const std::string& text) {
    json j = parse_or_throw(text);
    if (!j.is_object() || !j.contains("a1") || !j.contains("a2"))
        throw bad_config("pair: expected {a1, a2}");
    return StormerPair{matrix_from_json(j.at("a1"), "pair.a1"),
                       matrix_from_json(j.at("a2"), "pair.a2")};
}

std::string matrix_to_json(const ComplexMatrix& m) {
    JsonWriter w;
    write_matrix(w, m);
    return w.str();
}

std::string state_to_json(const BipartiteState& s) {
    JsonWriter w;
    w.begin_object();
    w.key("split").begin_object();
    w.key("dA").value(s.split.dA);
    w.key("dB").value(s.split.dB);
    w.end_object();
    w.key("rho");
    write_matrix(w, s.rho);
    w.end_object();
    return w.str();
}

std::string map_to_json(const LinearMap& m) {
    JsonWriter w;
    w.begin_object();
    w.key("dim_in").value(m.dim_in);
    w.key("dim_out").value(m.dim_out);
    w.key("choi");
    write_matrix(w, m.choi);
    w.end_object();
    return w.str();
}

std::string pair_to_json(const StormerPair& p) {
    JsonWriter w;
    w.begin_object();
    w.key("a1");
    write_matrix(w, p.a1);
    w.key("a2");
    write_matrix(w, p.a2);
    w.end_object();
    return w.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw bad_config("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw bad_config("cannot write file: " + path);
    out << contents;
}

} // namespace pptlab
