#include "geoindex/config.hpp"

#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include "geoindex/errors.hpp"
#include "json.hpp"

namespace geoindex {

using Json = nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------------------
// Source map

class LineScanner {
public:
    explicit LineScanner(std::string_view text) : text_(text) {}

    std::map<std::string, int> run() {
        skip_ws();
        value("");
        return std::move(lines_);
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    std::map<std::string, int> lines_;

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void advance() {
        if (peek() == '\n') ++line_;
        ++pos_;
    }

    void skip_ws() {
        while (pos_ < text_.size() && (peek() == ' ' || peek() == '\t' || peek() == '\n' || peek() == '\r')) advance();
    }

    std::string string_token() {
        std::string out;
        advance();  // opening quote
        while (pos_ < text_.size() && peek() != '"') {
            if (peek() == '\\') {
                advance();
                switch (peek()) {
                    case '/': out += '/'; break;
                    case '"': out += '"'; break;
                    case '\\': out += '\\'; break;
                    default: out += '?'; break;
                }
                advance();
                continue;
            }
            out += peek();
            advance();
        }
        advance();  // closing quote
        return out;
    }

    static std::string escape_pointer(const std::string& key) {
        std::string out;
        for (char c : key) {
            if (c == '~') out += "~0";
            else if (c == '/') out += "~1";
            else out += c;
        }
        return out;
    }

    void value(const std::string& pointer) {
        lines_.emplace(pointer, line_);
        const char c = peek();
        if (c == '{') {
            advance();
            skip_ws();
            while (peek() != '}' && pos_ < text_.size()) {
                const int key_line = line_;
                const std::string child = pointer + "/" + escape_pointer(string_token());
                skip_ws();
                advance();  // colon
                skip_ws();
                lines_.emplace(child, key_line);
                value(child);
                skip_ws();
                if (peek() == ',') advance();
                skip_ws();
            }
            advance();
        } else if (c == '[') {
            advance();
            skip_ws();
            std::size_t index = 0;
            while (peek() != ']' && pos_ < text_.size()) {
                value(pointer + "/" + std::to_string(index++));
                skip_ws();
                if (peek() == ',') advance();
                skip_ws();
            }
            advance();
        } else if (c == '"') {
            string_token();
        } else {
            while (pos_ < text_.size() && std::string_view(",}] \t\r\n").find(peek()) == std::string_view::npos) advance();
        }
    }
};

// ---------------------------------------------------------------------------
// Field access with located errors

class Reader {
public:
    explicit Reader(std::string_view text) : lines_(json_line_map(text)) {}

    [[noreturn]] void fail(const std::string& pointer, const std::string& message) const {
        throw ValidationError(where(pointer) + message);
    }

    std::string where(const std::string& pointer) const {
        std::string p = pointer;
        while (true) {
            if (auto it = lines_.find(p); it != lines_.end())
                return "line " + std::to_string(it->second) + ", " + (pointer.empty() ? "/" : pointer) + ": ";
            if (p.empty()) break;
            p = p.substr(0, p.rfind('/'));
        }
        return (pointer.empty() ? std::string("/") : pointer) + ": ";
    }

    void only_keys(const Json& obj, const std::string& pointer, std::initializer_list<std::string_view> allowed) const {
        if (!obj.is_object()) fail(pointer, "expected an object");
        for (const auto& item : obj.items()) {
            bool known = false;
            for (auto a : allowed) known = known || item.key() == a;
            if (!known) fail(pointer + "/" + item.key(), "unknown key \"" + item.key() + "\"");
        }
    }

    const Json& required(const Json& obj, const std::string& pointer, const char* key) const {
        auto it = obj.find(key);
        if (it == obj.end()) fail(pointer, std::string("missing required key \"") + key + "\"");
        return *it;
    }

    std::int64_t integer(const Json& v, const std::string& pointer) const {
        if (v.is_number_integer()) return v.get<std::int64_t>();
        fail(pointer, "expected an integer");
    }

    int small_integer(const Json& v, const std::string& pointer) const {
        const std::int64_t x = integer(v, pointer);
        if (x < -1'000'000 || x > 1'000'000) fail(pointer, "integer out of range");
        return static_cast<int>(x);
    }

    bool boolean(const Json& v, const std::string& pointer) const {
        if (!v.is_boolean()) fail(pointer, "expected true or false");
        return v.get<bool>();
    }

    std::string text(const Json& v, const std::string& pointer) const {
        if (!v.is_string()) fail(pointer, "expected a string");
        return v.get<std::string>();
    }

    Rational rational(const Json& v, const std::string& pointer) const {
        if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
        if (!v.is_string()) fail(pointer, "expected a rational as a string \"p/q\"");
        try {
            return parse_rational(v.get<std::string>());
        } catch (const InputError& e) {
            fail(pointer, e.what());
        }
    }

    RotationNumber rotation(const Json& v, const std::string& pointer) const {
        if (v.is_object()) {
            only_keys(v, pointer, {"decimal", "err", "irrational"});
            const std::string value = text(required(v, pointer, "decimal"), pointer + "/decimal");
            const std::string err = text(required(v, pointer, "err"), pointer + "/err");
            const bool irr = v.contains("irrational") ? boolean(v["irrational"], pointer + "/irrational") : false;
            try {
                return RotationNumber::decimal(value, err, irr);
            } catch (const InputError& e) {
                fail(pointer, e.what());
            }
        }
        return RotationNumber::exact(rational(v, pointer));
    }

private:
    std::map<std::string, int> lines_;
};

Json parse_json(std::string_view text) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error& e) {
        throw ValidationError(std::string("malformed JSON: ") + e.what());
    }
}

// Re-raise with a location prefix, keeping the error class (and so the exit status).
template <class F>
void located(const Reader& reader, const std::string& pointer, F&& body) {
    try {
        body();
    } catch (const DimensionError& e) {
        throw DimensionError(reader.where(pointer) + e.what());
    } catch (const ValidationError& e) {
        throw ValidationError(reader.where(pointer) + e.what());
    } catch (const UnsupportedError& e) {
        throw UnsupportedError(reader.where(pointer) + e.what());
    } catch (const PreconditionError& e) {
        throw PreconditionError(reader.where(pointer) + e.what());
    } catch (const RangeError& e) {
        throw RangeError(reader.where(pointer) + e.what());
    } catch (const PrecisionError& e) {
        throw PrecisionError(reader.where(pointer) + e.what());
    }
}

NormalFormDescriptor read_descriptor(const Reader& rd, const Json& v, const std::string& ptr) {
    rd.only_keys(v, ptr,
                 {"p_minus", "p_zero", "p_plus", "q_minus", "q_zero", "q_plus", "thetas", "alphas", "betas",
                  "hyperbolic_dim"});
    NormalFormDescriptor d;
    auto count = [&](const char* key, int& field) {
        if (v.contains(key)) field = rd.small_integer(v[key], ptr + "/" + key);
    };
    count("p_minus", d.p_minus);
    count("p_zero", d.p_zero);
    count("p_plus", d.p_plus);
    count("q_minus", d.q_minus);
    count("q_zero", d.q_zero);
    count("q_plus", d.q_plus);
    count("hyperbolic_dim", d.hyperbolic_dim);
    auto angles = [&](const char* key, std::vector<RotationNumber>& out) {
        if (!v.contains(key)) return;
        const std::string p = ptr + "/" + key;
        if (!v[key].is_array()) rd.fail(p, "expected a list of rotation numbers");
        for (std::size_t i = 0; i < v[key].size(); ++i) out.push_back(rd.rotation(v[key][i], p + "/" + std::to_string(i)));
    };
    angles("thetas", d.thetas);
    angles("alphas", d.alphas);
    angles("betas", d.betas);
    return d;
}

Json rational_json(const Rational& x) { return to_string(x); }

Json rotation_json(const RotationNumber& rho) {
    if (rho.is_exact()) return to_string(rho.value().lo());
    Json o = Json::object();
    o["decimal"] = rho.decimal_text();
    o["err"] = rho.err_text();
    o["irrational"] = rho.irrational();
    return o;
}

Json descriptor_json(const NormalFormDescriptor& d) {
    Json o = Json::object();
    o["p_minus"] = d.p_minus;
    o["p_zero"] = d.p_zero;
    o["p_plus"] = d.p_plus;
    o["q_minus"] = d.q_minus;
    o["q_zero"] = d.q_zero;
    o["q_plus"] = d.q_plus;
    for (auto [key, list] : {std::pair{"thetas", &d.thetas}, std::pair{"alphas", &d.alphas}, std::pair{"betas", &d.betas}}) {
        Json a = Json::array();
        for (const auto& rho : *list) a.push_back(rotation_json(rho));
        o[key] = a;
    }
    o["hyperbolic_dim"] = d.hyperbolic_dim;
    return o;
}

}  // namespace

std::map<std::string, int> json_line_map(std::string_view text) { return LineScanner(text).run(); }

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot read file \"" + path.string() + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

ConfigDocument parse_config(std::string_view text) {
    const Json root = parse_json(text);
    const Reader rd(text);
    rd.only_keys(root, "", {"version", "n", "bumpy", "resolution_limit", "curvature_assumption", "geodesics", "output"});

    const std::int64_t version = rd.integer(rd.required(root, "", "version"), "/version");
    if (version != config_version)
        rd.fail("/version", "unsupported version " + std::to_string(version) + ", expected " + std::to_string(config_version));

    ConfigDocument doc;
    SphereConfiguration& cfg = doc.sphere;
    cfg.n = rd.small_integer(rd.required(root, "", "n"), "/n");
    if (root.contains("bumpy")) cfg.bumpy = rd.boolean(root["bumpy"], "/bumpy");
    if (root.contains("resolution_limit")) cfg.resolution_limit = rd.integer(root["resolution_limit"], "/resolution_limit");
    if (root.contains("curvature_assumption")) {
        const Json& c = root["curvature_assumption"];
        const std::string p = "/curvature_assumption";
        rd.only_keys(c, p, {"pinch", "reversibility"});
        cfg.curvature = CurvatureAssumption{rd.rational(rd.required(c, p, "pinch"), p + "/pinch"),
                                            rd.rational(rd.required(c, p, "reversibility"), p + "/reversibility")};
    }
    if (root.contains("output")) {
        const Json& o = root["output"];
        rd.only_keys(o, "/output", {"format"});
        if (o.contains("format")) {
            doc.output_format = rd.text(o["format"], "/output/format");
            if (doc.output_format != "tsv" && doc.output_format != "json")
                rd.fail("/output/format", "format must be \"tsv\" or \"json\"");
        }
    }
    located(rd, "", [&] { validate_sphere(cfg); });

    const Json& list = rd.required(root, "", "geodesics");
    if (!list.is_array()) rd.fail("/geodesics", "expected a list of geodesics");
    std::set<std::string> labels;
    for (std::size_t j = 0; j < list.size(); ++j) {
        const std::string p = "/geodesics/" + std::to_string(j);
        const Json& g = list[j];
        rd.only_keys(g, p, {"label", "initial_index", "initial_nullity", "descriptor"});
        GeodesicRecord rec;
        rec.label = rd.text(rd.required(g, p, "label"), p + "/label");
        if (!labels.insert(rec.label).second) rd.fail(p + "/label", "duplicate geodesic label \"" + rec.label + "\"");
        rec.initial_index = rd.integer(rd.required(g, p, "initial_index"), p + "/initial_index");
        rec.descriptor = read_descriptor(rd, rd.required(g, p, "descriptor"), p + "/descriptor");
        rec.initial_nullity = g.contains("initial_nullity") ? rd.integer(g["initial_nullity"], p + "/initial_nullity")
                                                            : nullity_from_blocks(rec.descriptor);
        located(rd, p, [&] { validate_geodesic(cfg, rec); });
        cfg.geodesics.push_back(std::move(rec));
    }
    return doc;
}

ConfigDocument load_config(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    try {
        return parse_config(text);
    } catch (const ValidationError& e) {
        throw ValidationError(path.filename().string() + ": " + e.what());
    }
}

std::string serialize_config(const ConfigDocument& doc) {
    const auto& cfg = doc.sphere;
    Json root = Json::object();
    root["version"] = config_version;
    root["n"] = cfg.n;
    root["bumpy"] = cfg.bumpy;
    root["resolution_limit"] = cfg.resolution_limit;
    if (cfg.curvature) {
        Json c = Json::object();
        c["pinch"] = rational_json(cfg.curvature->pinch);
        c["reversibility"] = rational_json(cfg.curvature->reversibility);
        root["curvature_assumption"] = c;
    }
    Json list = Json::array();
    for (const auto& g : cfg.geodesics) {
        Json o = Json::object();
        o["label"] = g.label;
        o["initial_index"] = g.initial_index;
        o["initial_nullity"] = g.initial_nullity;
        o["descriptor"] = descriptor_json(g.descriptor);
        list.push_back(o);
    }
    root["geodesics"] = list;
    root["output"] = Json{{"format", doc.output_format}};
    return root.dump(2) + "\n";
}

JumpCertificate parse_certificate(std::string_view text, const SphereConfiguration* cfg) {
    const Json root = parse_json(text);
    const Reader rd(text);
    rd.only_keys(root, "", {"version", "labels", "N", "M", "m", "xi", "eps", "delta"});
    const std::int64_t version = rd.integer(rd.required(root, "", "version"), "/version");
    if (version != config_version) rd.fail("/version", "unsupported certificate version " + std::to_string(version));

    JumpCertificate cert;
    cert.N = rd.integer(rd.required(root, "", "N"), "/N");
    cert.M = rd.integer(rd.required(root, "", "M"), "/M");
    cert.eps = rd.rational(rd.required(root, "", "eps"), "/eps");
    cert.delta = rd.rational(rd.required(root, "", "delta"), "/delta");
    const Json& m = rd.required(root, "", "m");
    const Json& xi = rd.required(root, "", "xi");
    if (!m.is_array()) rd.fail("/m", "expected a list of iterates");
    if (!xi.is_array()) rd.fail("/xi", "expected a list of 0/1 values");
    for (std::size_t j = 0; j < m.size(); ++j) cert.m.push_back(rd.integer(m[j], "/m/" + std::to_string(j)));
    for (std::size_t j = 0; j < xi.size(); ++j) cert.xi.push_back(rd.small_integer(xi[j], "/xi/" + std::to_string(j)));

    if (root.contains("labels")) {
        const Json& labels = root["labels"];
        if (!labels.is_array()) rd.fail("/labels", "expected a list of geodesic labels");
        if (cfg) {
            if (labels.size() != cfg->geodesics.size())
                rd.fail("/labels", "certificate names " + std::to_string(labels.size()) + " geodesics, configuration has " +
                                       std::to_string(cfg->geodesics.size()));
            for (std::size_t j = 0; j < labels.size(); ++j) {
                const std::string label = rd.text(labels[j], "/labels/" + std::to_string(j));
                if (label != cfg->geodesics[j].label)
                    rd.fail("/labels/" + std::to_string(j), "label \"" + label + "\" does not match configuration geodesic \"" +
                                                                cfg->geodesics[j].label + "\"");
            }
        }
    }
    return cert;
}

JumpCertificate load_certificate(const std::filesystem::path& path, const SphereConfiguration* cfg) {
    const std::string text = read_text_file(path);
    try {
        return parse_certificate(text, cfg);
    } catch (const ValidationError& e) {
        throw ValidationError(path.filename().string() + ": " + e.what());
    }
}

std::string serialize_certificate(const JumpCertificate& cert, const SphereConfiguration& cfg) {
    Json root = Json::object();
    root["version"] = config_version;
    Json labels = Json::array();
    for (const auto& g : cfg.geodesics) labels.push_back(g.label);
    root["labels"] = labels;
    root["N"] = cert.N;
    root["M"] = cert.M;
    root["m"] = cert.m;
    root["xi"] = cert.xi;
    root["eps"] = to_string(cert.eps);
    root["delta"] = to_string(cert.delta);
    return root.dump(2) + "\n";
}

}  // namespace geoindex
