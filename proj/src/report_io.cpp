#include "dualnest/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace dualnest {

Json& Json::operator[](const std::string& key) {
    if (kind_ == Kind::Null) kind_ = Kind::Object;
    if (kind_ != Kind::Object) {
        throw std::logic_error("json: indexing a non-object with a key");
    }
    for (auto& [k, v] : members_) {
        if (k == key) return v;
    }
    members_.emplace_back(key, Json());
    return members_.back().second;
}

void Json::push_back(Json v) {
    if (kind_ == Kind::Null) kind_ = Kind::Array;
    if (kind_ != Kind::Array) {
        throw std::logic_error("json: push_back on a non-array");
    }
    items_.push_back(std::move(v));
}

std::string format_double(double v) {
    if (!std::isfinite(v)) return v > 0 ? "1e999" : (v < 0 ? "-1e999" : "0");
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

void write_escaped(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
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
    out += '"';
}

}  // namespace

void Json::write(std::string& out, int indent, int level) const {
    const std::string pad(static_cast<size_t>(indent) * (level + 1), ' ');
    const std::string closing(static_cast<size_t>(indent) * level, ' ');
    const char* nl = indent > 0 ? "\n" : "";
    switch (kind_) {
        case Kind::Null: out += "null"; break;
        case Kind::Bool: out += bool_ ? "true" : "false"; break;
        case Kind::Int: out += std::to_string(int_); break;
        case Kind::Double: out += format_double(double_); break;
        case Kind::String: write_escaped(out, string_); break;
        case Kind::Object: {
            if (members_.empty()) { out += "{}"; break; }
            out += '{';
            out += nl;
            for (size_t i = 0; i < members_.size(); ++i) {
                out += pad;
                write_escaped(out, members_[i].first);
                out += ": ";
                members_[i].second.write(out, indent, level + 1);
                if (i + 1 < members_.size()) out += ',';
                out += nl;
            }
            out += closing;
            out += '}';
            break;
        }
        case Kind::Array: {
            if (items_.empty()) { out += "[]"; break; }
            out += '[';
            out += nl;
            for (size_t i = 0; i < items_.size(); ++i) {
                out += pad;
                items_[i].write(out, indent, level + 1);
                if (i + 1 < items_.size()) out += ',';
                out += nl;
            }
            out += closing;
            out += ']';
            break;
        }
    }
}

std::string Json::dump(int indent) const {
    std::string out;
    write(out, indent, 0);
    out += '\n';
    return out;
}

Json complex_json(Complex z) {
    Json j = Json::array();
    j.push_back(z.real());
    j.push_back(z.imag());
    return j;
}

Json polyline_json(const Polyline& poly) {
    Json j = Json::array();
    for (Complex z : poly) j.push_back(complex_json(z));
    return j;
}

Json meta_block(Json config_echo) {
    Json meta = Json::object();
    meta["tool"] = kToolVersion;
    meta["config"] = std::move(config_echo);
    meta["annulus_index_convention"] = kIndexConvention;
    return meta;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

std::string svg_figure(const std::vector<Polyline>& curves, int size) {
    BoundingBox box;
    bool first = true;
    for (const Polyline& c : curves) {
        for (Complex z : c) {
            if (first) {
                box = {z.real(), z.real(), z.imag(), z.imag()};
                first = false;
            } else {
                box.xmin = std::min(box.xmin, z.real());
                box.xmax = std::max(box.xmax, z.real());
                box.ymin = std::min(box.ymin, z.imag());
                box.ymax = std::max(box.ymax, z.imag());
            }
        }
    }
    const double span =
        std::max({box.width(), box.height(), 1e-12});
    const double scale = (size - 20) / span;
    auto X = [&](double x) { return 10 + (x - box.xmin) * scale; };
    auto Y = [&](double y) { return size - 10 - (y - box.ymin) * scale; };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
           std::to_string(size) + "\" height=\"" + std::to_string(size) +
           "\">\n";
    for (const Polyline& c : curves) {
        if (c.empty()) continue;
        out += "  <polyline fill=\"none\" stroke=\"black\" "
               "stroke-width=\"0.5\" points=\"";
        char buf[64];
        for (Complex z : c) {
            std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", X(z.real()),
                          Y(z.imag()));
            out += buf;
        }
        out += "\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace dualnest
