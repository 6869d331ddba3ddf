#pragma once

#include "dualnest/geometry.hpp"

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace dualnest {

inline constexpr const char* kToolVersion = "dualnest 1.0.0";

// Every output file carries this so downstream readers never have to guess
// which side of the boundary an index refers to.
inline constexpr const char* kIndexConvention =
    "A_d(z) is the region between dP_d(z) and dP_{d+1}(z); nest indices "
    "follow increasing depth";

/// Insertion-ordered JSON value with doubles fixed at 17 significant
/// digits, so identical runs serialize byte-identically.
class Json {
  public:
    Json() : kind_(Kind::Null) {}
    Json(bool b) : kind_(Kind::Bool), bool_(b) {}
    Json(int v) : kind_(Kind::Int), int_(v) {}
    Json(long v) : kind_(Kind::Int), int_(v) {}
    Json(long long v) : kind_(Kind::Int), int_(v) {}
    Json(unsigned long long v)
        : kind_(Kind::Int), int_(static_cast<long long>(v)) {}
    Json(double v) : kind_(Kind::Double), double_(v) {}
    Json(const char* s) : kind_(Kind::String), string_(s) {}
    Json(std::string s) : kind_(Kind::String), string_(std::move(s)) {}

    static Json object() { Json j; j.kind_ = Kind::Object; return j; }
    static Json array() { Json j; j.kind_ = Kind::Array; return j; }

    /// Object access; inserts a null member on first use.
    Json& operator[](const std::string& key);

    void push_back(Json v);
    size_t size() const { return items_.size(); }

    std::string dump(int indent = 2) const;

  private:
    enum class Kind { Null, Bool, Int, Double, String, Object, Array };
    void write(std::string& out, int indent, int level) const;

    Kind kind_;
    bool bool_ = false;
    long long int_ = 0;
    double double_ = 0.0;
    std::string string_;
    std::vector<std::pair<std::string, Json>> members_;  // object, in order
    std::vector<Json> items_;                            // array
};

std::string format_double(double v);  // 17 significant digits

Json complex_json(Complex z);                 // [re, im]
Json polyline_json(const Polyline& poly);     // [[re, im], ...]

/// version + config echo + index-convention note, embedded in every output.
Json meta_block(Json config_echo);

void write_text_file(const std::string& path, const std::string& content);

/// Standalone SVG of point paths (one polyline per curve), auto-scaled.
std::string svg_figure(const std::vector<Polyline>& curves, int size = 800);

}  // namespace dualnest
