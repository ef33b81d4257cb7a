#include "ccp/io.hpp"

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace ccp {

namespace {

using json = nlohmann::json;

// nlohmann's DOM forgets positions, so on a structural error we rescan the (already
// valid) text and record the line where every value starts, keyed by its path.
class LineIndex {
public:
    explicit LineIndex(std::string_view s) : s_(s) { value(""); }

    std::size_t line_of(const std::string& path) const
    {
        auto it = lines_.find(path);
        return it == lines_.end() ? 1 : it->second;
    }

private:
    void skip()
    {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) {
            if (s_[i_] == '\n') ++line_;
            ++i_;
        }
    }

    std::string string_token()
    {
        std::string out;
        ++i_;
        while (i_ < s_.size() && s_[i_] != '"') {
            if (s_[i_] == '\\') ++i_;
            if (i_ < s_.size()) out += s_[i_++];
        }
        ++i_;
        return out;
    }

    void value(const std::string& path)
    {
        skip();
        if (i_ >= s_.size()) return;
        lines_.emplace(path, line_);
        const char c = s_[i_];
        if (c == '{') {
            ++i_;
            for (;;) {
                skip();
                if (i_ >= s_.size() || s_[i_] == '}') break;
                if (s_[i_] == ',') {
                    ++i_;
                    continue;
                }
                std::string key = string_token();
                skip();
                ++i_;  // ':'
                value(path.empty() ? key : path + "." + key);
            }
            ++i_;
        } else if (c == '[') {
            ++i_;
            std::size_t n = 0;
            for (;;) {
                skip();
                if (i_ >= s_.size() || s_[i_] == ']') break;
                if (s_[i_] == ',') {
                    ++i_;
                    continue;
                }
                value(path + "[" + std::to_string(n++) + "]");
            }
            ++i_;
        } else if (c == '"') {
            string_token();
        } else {
            while (i_ < s_.size() && !std::strchr(",]} \t\r\n", s_[i_])) ++i_;
        }
    }

    std::string_view s_;
    std::size_t i_ = 0;
    std::size_t line_ = 1;
    std::map<std::string, std::size_t> lines_;
};

struct Reader {
    std::string_view text;

    [[noreturn]] void error(const std::string& path, const std::string& what) const
    {
        const std::size_t line = LineIndex(text).line_of(path);
        fail(ErrorKind::parse, "line " + std::to_string(line) + ": " + (path.empty() ? "document" : path) + ": " + what);
    }

    Rational rational(const json& j, const std::string& path) const
    {
        if (j.is_number_integer()) return Rational(j.dump());
        if (!j.is_string()) error(path, "expected a rational string");
        try {
            return parse_rational(j.get<std::string>());
        } catch (const Error& e) {
            error(path, e.what());
        }
    }

    Vector vector(const json& j, const std::string& path, std::size_t dim) const
    {
        if (!j.is_array()) error(path, "expected an array of coordinates");
        if (j.size() != dim)
            error(path, "has " + std::to_string(j.size()) + " coordinates, dim is " + std::to_string(dim));
        Vector v;
        for (std::size_t i = 0; i < j.size(); ++i) v.push_back(rational(j[i], path + "[" + std::to_string(i) + "]"));
        return v;
    }
};

void append_vector(std::string& out, const Vector& v)
{
    out += '[';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += '"' + to_string(v[i]) + '"';
    }
    out += ']';
}

}  // namespace

CcpInstance parse_instance(std::string_view text, std::size_t expected_colors)
{
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        // e.what() already names line and column
        fail(ErrorKind::parse, e.what());
    }
    Reader r{text};
    if (!doc.is_object()) r.error("", "expected an object");
    for (const char* field : {"dim", "b", "colors"})
        if (!doc.contains(field)) r.error("", std::string("missing field \"") + field + "\"");
    if (!doc["dim"].is_number_unsigned() || doc["dim"].get<std::size_t>() == 0)
        r.error("dim", "expected a positive integer");

    CcpInstance inst;
    inst.dim = doc["dim"].get<std::size_t>();
    inst.b = r.vector(doc["b"], "b", inst.dim);
    const json& colors = doc["colors"];
    if (!colors.is_array()) r.error("colors", "expected an array of colors");
    if (expected_colors && colors.size() != expected_colors)
        r.error("colors", "expected " + std::to_string(expected_colors) + " colors, found " + std::to_string(colors.size()));
    for (std::size_t i = 0; i < colors.size(); ++i) {
        const std::string cp = "colors[" + std::to_string(i) + "]";
        if (!colors[i].is_array()) r.error(cp, "expected an array of points");
        PointSet C;
        for (std::size_t j = 0; j < colors[i].size(); ++j)
            C.push_back(r.vector(colors[i][j], cp + "[" + std::to_string(j) + "]", inst.dim));
        inst.colors.push_back(std::move(C));
    }
    return inst;
}

std::string serialize_instance(const CcpInstance& inst)
{
    std::string out = "{\n  \"dim\": " + std::to_string(inst.dim) + ",\n  \"b\": ";
    append_vector(out, inst.b);
    out += ",\n  \"colors\": [";
    for (std::size_t i = 0; i < inst.colors.size(); ++i) {
        out += i ? ",\n    [" : "\n    [";
        for (std::size_t j = 0; j < inst.colors[i].size(); ++j) {
            if (j) out += ", ";
            append_vector(out, inst.colors[i][j]);
        }
        out += ']';
    }
    out += inst.colors.empty() ? "]\n}\n" : "\n  ]\n}\n";
    return out;
}

PointSet parse_points(std::string_view text)
{
    PointSet P;
    std::size_t line = 0;
    std::istringstream in{std::string(text)};
    std::string s;
    while (std::getline(in, s)) {
        ++line;
        for (auto& c : s)
            if (c == ',') c = ' ';
        std::istringstream fields(s);
        std::string tok;
        Vector p;
        while (fields >> tok) {
            if (p.empty() && tok[0] == '#') break;
            try {
                p.push_back(parse_rational(tok));
            } catch (const Error& e) {
                fail(ErrorKind::parse, "line " + std::to_string(line) + ": " + e.what());
            }
        }
        if (p.empty()) continue;
        if (!P.empty() && p.size() != P.front().size())
            fail(ErrorKind::parse, "line " + std::to_string(line) + ": point has " + std::to_string(p.size()) +
                                       " coordinates, expected " + std::to_string(P.front().size()));
        P.push_back(std::move(p));
    }
    if (P.empty()) fail(ErrorKind::parse, "point file contains no points");
    return P;
}

std::string serialize_points(const PointSet& P)
{
    std::string out;
    for (const auto& p : P) {
        for (std::size_t i = 0; i < p.size(); ++i) out += (i ? " " : "") + to_string(p[i]);
        out += '\n';
    }
    return out;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::parse, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

std::string fnv1a_hex(std::string_view bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string instance_digest(const CcpInstance& inst) { return fnv1a_hex(serialize_instance(inst)); }
std::string points_digest(const PointSet& P) { return fnv1a_hex(serialize_points(P)); }

}  // namespace ccp
