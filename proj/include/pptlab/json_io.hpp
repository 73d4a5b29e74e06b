#ifndef PPTLAB_JSON_IO_HPP
#define PPTLAB_JSON_IO_HPP

#include <string>
#include <utility>
#include <vector>

#include "pptlab/mapspace.hpp"
#include "pptlab/matrix.hpp"
#include "pptlab/states.hpp"
#include "pptlab/stormer.hpp"

namespace pptlab {

inline constexpr const char* kToolVersion = "1.0.0";

// Deterministic JSON emitter.  Field order is the insertion order and every
// number is printed with 17 significant digits, so equal inputs give
// byte-equal documents and doubles round-trip losslessly.
class JsonWriter {
public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();
    JsonWriter& key(const std::string& k);
    JsonWriter& value(double v);
    JsonWriter& value(std::size_t v);
    JsonWriter& value(int v);
    JsonWriter& value(bool v);
    JsonWriter& value(const char* v);
    JsonWriter& value(const std::string& v);
    JsonWriter& raw(const std::string& fragment);

    const std::string& str() const { return out_; }

private:
    void separator();
    std::string out_;
    std::vector<bool> need_comma_;
    bool pending_key_ = false;
};

std::string format_double(double v); // %.17g, finite inputs only

// Matrix payload {rows, cols, re, im}; vectors use the same schema with
// cols = 1.
void write_matrix(JsonWriter& w, const ComplexMatrix& m);
void write_vector(JsonWriter& w, const std::vector<cplx>& v);

// Parsing goes through nlohmann::json; malformed documents or schema
// violations throw bad_config with a location diagnostic.
ComplexMatrix parse_matrix_json(const std::string& text);
BipartiteState parse_state_json(const std::string& text);
LinearMap parse_map_json(const std::string& text);
StormerPair parse_pair_json(const std::string& text);

std::string state_to_json(const BipartiteState& s);
std::string matrix_to_json(const ComplexMatrix& m);
std::string map_to_json(const LinearMap& m);
std::string pair_to_json(const StormerPair& p);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

} // namespace pptlab

#endif
