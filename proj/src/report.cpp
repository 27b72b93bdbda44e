#include "cutwalk/report.hpp"

#include "cutwalk/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace cutwalk {

Json& Json::set(std::string key, Json value) {
    if (type_ != Type::Object) throw std::logic_error("Json::set on non-object");
    members_.emplace_back(std::move(key), std::move(value));
    return *this;
}

Json& Json::push(Json value) {
    if (type_ != Type::Array) throw std::logic_error("Json::push on non-array");
    items_.push_back(std::move(value));
    return *this;
}

bool Json::contains(const std::string& key) const { return find(key) != nullptr; }

const Json* Json::find(const std::string& key) const {
    if (type_ != Type::Object) return nullptr;
    for (const auto& [k, v] : members_)
        if (k == key) return &v;
    return nullptr;
}

std::string Json::format_double(double v) {
    if (std::isnan(v)) return "null";
    if (std::isinf(v)) return v > 0 ? "1e999" : "-1e999";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v,
                                   std::chars_format::general, 17);
    std::string s(buf, ptr);
    // ensure the token re-parses as a double, not an integer
    if (s.find_first_of(".eE") == std::string::npos) s += ".0";
    return s;
}

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

}  // namespace

std::string Json::scalar_string() const {
    switch (type_) {
        case Type::Null: return "null";
        case Type::Bool: return bool_ ? "true" : "false";
        case Type::Int: return std::to_string(int_);
        case Type::UInt: return std::to_string(uint_);
        case Type::Double: return format_double(double_);
        case Type::String: return string_;
        default: throw std::logic_error("scalar_string on composite Json");
    }
}

void Json::dump_to(std::string& out, int indent, int depth) const {
    const std::string pad(static_cast<std::size_t>(indent) * depth, ' ');
    const std::string pad_in(static_cast<std::size_t>(indent) * (depth + 1), ' ');
    switch (type_) {
        case Type::Object: {
            if (members_.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            for (std::size_t i = 0; i < members_.size(); ++i) {
                out += pad_in + "\"" + json_escape(members_[i].first) + "\": ";
                members_[i].second.dump_to(out, indent, depth + 1);
                if (i + 1 < members_.size()) out += ",";
                out += "\n";
            }
            out += pad + "}";
            return;
        }
        case Type::Array: {
            if (items_.empty()) {
                out += "[]";
                return;
            }
            bool all_scalar = true;
            for (const Json& it : items_)
                if (it.type_ == Type::Array || it.type_ == Type::Object) {
                    if (it.type_ == Type::Array) {
                        for (const Json& inner : it.items_)
                            if (inner.type_ == Type::Array || inner.type_ == Type::Object)
                                all_scalar = false;
                        continue;  // short inner arrays stay inline
                    }
                    all_scalar = false;
                }
            if (all_scalar) {
                out += "[";
                for (std::size_t i = 0; i < items_.size(); ++i) {
                    if (i) out += ", ";
                    items_[i].dump_to(out, 0, 0);
                }
                out += "]";
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < items_.size(); ++i) {
                out += pad_in;
                items_[i].dump_to(out, indent, depth + 1);
                if (i + 1 < items_.size()) out += ",";
                out += "\n";
            }
            out += pad + "]";
            return;
        }
        case Type::String:
            out += "\"" + json_escape(string_) + "\"";
            return;
        default:
            out += scalar_string();
    }
}

std::string Json::dump(int indent) const {
    std::string out;
    dump_to(out, indent, 0);
    return out;
}

void Json::flatten_to(const std::string& prefix,
                      std::vector<std::pair<std::string, std::string>>& out) const {
    switch (type_) {
        case Type::Object:
            for (const auto& [k, v] : members_)
                v.flatten_to(prefix.empty() ? k : prefix + "." + k, out);
            return;
        case Type::Array:
            for (std::size_t i = 0; i < items_.size(); ++i)
                items_[i].flatten_to(prefix + "." + std::to_string(i), out);
            return;
        case Type::String:
            out.emplace_back(prefix, string_);
            return;
        default:
            out.emplace_back(prefix, scalar_string());
    }
}

std::vector<std::pair<std::string, std::string>> Json::flatten() const {
    std::vector<std::pair<std::string, std::string>> out;
    flatten_to("", out);
    return out;
}

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

void emit_report(const Json& report, const std::string& path, const std::string& format) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    if (format == "json") {
        os << report.dump() << "\n";
    } else if (format == "csv") {
        const auto rows = report.flatten();
        std::string header, data;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i) {
                header += ",";
                data += ",";
            }
            header += csv_quote(rows[i].first);
            data += csv_quote(rows[i].second);
        }
        os << header << "\r\n" << data << "\r\n";
    } else {
        throw ConfigError("unknown output format: " + format);
    }
    os.flush();
    if (!os) throw std::runtime_error("write failed for output file: " + path);
}

void emit_curve_csv(const std::string& path, const std::string& x_name,
                    const std::string& y_name, const std::vector<double>& xs,
                    const std::vector<double>& ys) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    os << csv_quote(x_name) << "," << csv_quote(y_name) << "\r\n";
    for (std::size_t i = 0; i < xs.size() && i < ys.size(); ++i)
        os << Json::format_double(xs[i]) << "," << Json::format_double(ys[i]) << "\r\n";
    os.flush();
    if (!os) throw std::runtime_error("write failed for output file: " + path);
}

}  // namespace cutwalk
