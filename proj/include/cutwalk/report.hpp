#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace cutwalk {

/// Minimal insertion-ordered JSON value with fully deterministic
/// serialization: identical trees produce identical bytes, doubles are
/// rendered with up to 17 significant digits (shortest exact form), keys
/// keep insertion order. Output-only; experiment reports must be
/// byte-reproducible, so no general-purpose JSON library is used here.
class Json {
public:
    enum class Type { Null, Bool, Int, UInt, Double, String, Array, Object };

    Json() : type_(Type::Null) {}
    Json(bool b) : type_(Type::Bool), bool_(b) {}
    Json(int v) : type_(Type::Int), int_(v) {}
    Json(std::int64_t v) : type_(Type::Int), int_(v) {}
    Json(std::uint64_t v) : type_(Type::UInt), uint_(v) {}
    Json(double v) : type_(Type::Double), double_(v) {}
    Json(const char* s) : type_(Type::String), string_(s) {}
    Json(std::string s) : type_(Type::String), string_(std::move(s)) {}

    static Json object() {
        Json j;
        j.type_ = Type::Object;
        return j;
    }
    static Json array() {
        Json j;
        j.type_ = Type::Array;
        return j;
    }

    Json& set(std::string key, Json value);  // object only
    Json& push(Json value);                  // array only

    Type type() const { return type_; }
    bool contains(const std::string& key) const;
    const Json* find(const std::string& key) const;

    std::string dump(int indent = 2) const;

    /// Dotted-key flattening for single-row CSV emission; arrays use numeric
    /// path segments ("estimates.density", "curve.3").
    std::vector<std::pair<std::string, std::string>> flatten() const;

    static std::string format_double(double v);

private:
    void dump_to(std::string& out, int indent, int depth) const;
    void flatten_to(const std::string& prefix,
                    std::vector<std::pair<std::string, std::string>>& out) const;
    std::string scalar_string() const;

    Type type_;
    bool bool_ = false;
    std::int64_t int_ = 0;
    std::uint64_t uint_ = 0;
    double double_ = 0.0;
    std::string string_;
    std::vector<std::pair<std::string, Json>> members_;  // object
    std::vector<Json> items_;                            // array
};

std::string csv_quote(const std::string& field);  // RFC-4180

/// Write `report` to `path`. json: the dumped tree plus trailing newline.
/// csv: one header row of flattened dotted column names, one data row.
/// Identical trees produce byte-identical files.
void emit_report(const Json& report, const std::string& path, const std::string& format);

/// Two-column CSV (n, value) for plottable curves.
void emit_curve_csv(const std::string& path, const std::string& x_name,
                    const std::string& y_name, const std::vector<double>& xs,
                    const std::vector<double>& ys);

}  // namespace cutwalk
