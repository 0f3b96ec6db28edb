#pragma once

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mopr/errors.hpp"
#include "mopr/functional.hpp"
#include "mopr/index_seq.hpp"
#include "mopr/multi_index.hpp"
#include "mopr/rational.hpp"
#include "mopr/roots.hpp"
#include "mopr/transform.hpp"

namespace mopr::cli {

using json = nlohmann::json;

inline constexpr const char* kJobSchema = "mopr-job/1";
inline constexpr const char* kSequenceSchema = "mopr-seq/1";

/// Any problem with the job description or its inputs. Maps to exit status 2.
class ConfigError : public Error {
public:
    using Error::Error;
};

enum class Mode { Compute, Transform, Verify, Sweep };
enum class Format { Csv, Json, Pretty };

inline std::string mode_name(Mode m) {
    switch (m) {
        case Mode::Compute: return "compute";
        case Mode::Transform: return "transform";
        case Mode::Verify: return "verify";
        case Mode::Sweep: return "sweep";
    }
    return "";
}

inline Mode parse_mode(const std::string& s) {
    if (s == "compute") return Mode::Compute;
    if (s == "transform") return Mode::Transform;
    if (s == "verify") return Mode::Verify;
    if (s == "sweep") return Mode::Sweep;
    throw ConfigError("unknown mode \"" + s + "\"");
}

inline Format parse_format(const std::string& s) {
    if (s == "csv") return Format::Csv;
    if (s == "json") return Format::Json;
    if (s == "pretty") return Format::Pretty;
    throw ConfigError("unknown format \"" + s + "\"");
}

/// A sequence given explicitly for one index and one side.
struct SequenceEntry {
    MultiIndex index;
    Side side = Side::TypeII;
    std::string kind;  ///< path, frame or explicit
    std::optional<MultiIndex> from, to;
    std::vector<std::size_t> order;  ///< 0-based
    std::vector<MultiIndex> elements;
};

struct SequenceChoice {
    enum class Kind { Frame, Path, File } kind = Kind::Frame;
    std::string path;
    std::vector<SequenceEntry> entries;
};

struct JobConfig {
    std::optional<Mode> mode;
    std::vector<MomentFunctional> system;
    std::optional<TransformSpec> transform;
    GeronimusChoice geronimus_type1, geronimus_type2;
    QMode q_mode = QMode::Full;
    std::vector<MultiIndex> indices;
    bool type1 = true, type2 = true;
    std::optional<std::string> sequence;
    std::optional<Format> format;

    std::size_t r() const { return system.size(); }
};

namespace detail {

inline void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!obj.is_object()) throw ConfigError(where + " must be an object");
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || key == a;
        if (!ok) throw ConfigError("unknown field \"" + key + "\" in " + where);
    }
}

inline const json& require(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) throw ConfigError("missing field \"" + std::string(key) + "\" in " + where);
    return obj.at(key);
}

inline std::string as_string(const json& v, const std::string& where) {
    if (!v.is_string()) throw ConfigError(where + " must be a string");
    return v.get<std::string>();
}

inline Rat as_rat(const json& v, const std::string& where) {
    if (!v.is_string()) throw ConfigError(where + " must be a rational given as a \"p/q\" string");
    try {
        return parse_rat(v.get<std::string>());
    } catch (const ParseError& e) {
        throw ConfigError(where + ": " + e.what());
    }
}

inline std::vector<Rat> as_rats(const json& v, const std::string& where) {
    if (!v.is_array()) throw ConfigError(where + " must be an array of rationals");
    std::vector<Rat> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_rat(v[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

inline int as_int(const json& v, const std::string& where) {
    if (!v.is_number_integer()) throw ConfigError(where + " must be an integer");
    return v.get<int>();
}

inline MultiIndex as_index(const json& v, const std::string& where) {
    if (!v.is_array()) throw ConfigError(where + " must be an array of integers");
    std::vector<int> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_int(v[i], where + "[" + std::to_string(i) + "]"));
    return MultiIndex(std::move(out));
}

/// A root is "z" (simple) or ["z", multiplicity].
inline RootList as_roots(const json& v, const std::string& where) {
    if (!v.is_array()) throw ConfigError(where + " must be an array of roots");
    std::vector<Root> roots;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string at = where + "[" + std::to_string(i) + "]";
        if (v[i].is_string()) {
            roots.push_back({as_rat(v[i], at), 1});
        } else if (v[i].is_array() && v[i].size() == 2) {
            const int mult = as_int(v[i][1], at + "[1]");
            if (mult < 1) throw ConfigError(at + " has multiplicity " + std::to_string(mult));
            roots.push_back({as_rat(v[i][0], at + "[0]"), static_cast<unsigned>(mult)});
        } else {
            throw ConfigError(at + " must be \"z\" or [\"z\", multiplicity]");
        }
    }
    try {
        return RootList(std::move(roots));
    } catch (const InvalidRootList& e) {
        throw ConfigError(where + ": " + e.what());
    }
}

/// Point masses are ["location", "weight"] pairs.
inline std::vector<PointMass> as_masses(const json& v, const std::string& where) {
    if (!v.is_array()) throw ConfigError(where + " must be an array of [location, weight] pairs");
    std::vector<PointMass> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string at = where + "[" + std::to_string(i) + "]";
        if (!v[i].is_array() || v[i].size() != 2) throw ConfigError(at + " must be a [location, weight] pair");
        out.push_back({as_rat(v[i][0], at + "[0]"), as_rat(v[i][1], at + "[1]")});
    }
    return out;
}

inline MomentFunctional as_functional(const json& v, const std::string& where) {
    const std::string kind = as_string(require(v, "kind", where), where + ".kind");
    if (kind == "explicit") {
        check_keys(v, {"kind", "moments"}, where);
        return MomentFunctional::explicit_moments(as_rats(require(v, "moments", where), where + ".moments"));
    }
    if (kind == "lebesgue") {
        check_keys(v, {"kind", "a", "b"}, where);
        return MomentFunctional::lebesgue(as_rat(require(v, "a", where), where + ".a"),
                                          as_rat(require(v, "b", where), where + ".b"));
    }
    if (kind == "point_masses") {
        check_keys(v, {"kind", "masses"}, where);
        return MomentFunctional::point_masses(as_masses(require(v, "masses", where), where + ".masses"));
    }
    if (kind == "scaled") {
        check_keys(v, {"kind", "factor", "base"}, where);
        return MomentFunctional::scaled(as_rat(require(v, "factor", where), where + ".factor"),
                                        as_functional(require(v, "base", where), where + ".base"));
    }
    if (kind == "sum") {
        check_keys(v, {"kind", "base"}, where);
        const json& terms = require(v, "base", where);
        if (!terms.is_array() || terms.empty()) throw ConfigError(where + ".base must be a nonempty array");
        std::vector<MomentFunctional> out;
        for (std::size_t i = 0; i < terms.size(); ++i)
            out.push_back(as_functional(terms[i], where + ".base[" + std::to_string(i) + "]"));
        return MomentFunctional::sum(std::move(out));
    }
    if (kind == "christoffel") {
        check_keys(v, {"kind", "base", "phi"}, where);
        return christoffel_of(as_functional(require(v, "base", where), where + ".base"),
                              as_roots(require(v, "phi", where), where + ".phi"));
    }
    if (kind == "rational") {
        check_keys(v, {"kind", "base", "phi", "psi", "free"}, where);
        const RootList psi = as_roots(require(v, "psi", where), where + ".psi");
        std::vector<Rat> free(psi.degree());
        if (v.contains("free")) free = as_rats(v.at("free"), where + ".free");
        return rational_perturb(as_functional(require(v, "base", where), where + ".base"),
                                v.contains("phi") ? as_roots(v.at("phi"), where + ".phi") : RootList{}, psi,
                                std::move(free));
    }
    if (kind == "uvarov") {
        check_keys(v, {"kind", "base", "masses"}, where);
        return uvarov_of(as_functional(require(v, "base", where), where + ".base"),
                         as_masses(require(v, "masses", where), where + ".masses"));
    }
    throw ConfigError("unknown functional kind \"" + kind + "\" in " + where);
}

/// Lists of free moments, one per component.
inline GeronimusChoice as_choice(const json& v, const std::string& where) {
    if (!v.is_array()) throw ConfigError(where + " must be an array with one list per component");
    GeronimusChoice out;
    for (std::size_t j = 0; j < v.size(); ++j) out.free.push_back(as_rats(v[j], where + "[" + std::to_string(j) + "]"));
    return out;
}

inline Side as_side(const json& v, const std::string& where) {
    const std::string s = as_string(v, where);
    if (s == "I") return Side::TypeI;
    if (s == "II") return Side::TypeII;
    throw ConfigError(where + " must be \"I\" or \"II\"");
}

}  // namespace detail

/// Component transform entries are {"phi", "psi", "free"} or {"phi", "masses"}; the latter
/// sets psi = phi and derives the free moments from one weight per root.
inline TransformSpec parse_transform(const json& v, const std::vector<MomentFunctional>& system) {
    using namespace detail;
    check_keys(v, {"components"}, "transform");
    const json& comps = require(v, "components", "transform");
    if (!comps.is_array()) throw ConfigError("transform.components must be an array");
    if (comps.size() != system.size())
        throw ConfigError("transform has " + std::to_string(comps.size()) + " components, system has " +
                          std::to_string(system.size()));
    TransformSpec spec;
    for (std::size_t j = 0; j < comps.size(); ++j) {
        const std::string where = "transform.components[" + std::to_string(j) + "]";
        const json& c = comps[j];
        check_keys(c, {"phi", "psi", "free", "masses"}, where);
        ComponentSpec out;
        if (c.contains("phi")) out.phi = as_roots(c.at("phi"), where + ".phi");
        if (c.contains("masses")) {
            if (c.contains("psi") || c.contains("free"))
                throw ConfigError(where + " gives masses together with psi or free");
            const auto weights = as_rats(c.at("masses"), where + ".masses");
            if (out.phi.has_repeated_roots()) throw ConfigError(where + ".masses needs simple roots in phi");
            if (weights.size() != out.phi.roots().size())
                throw ConfigError(where + ".masses has " + std::to_string(weights.size()) + " weights for " +
                                  std::to_string(out.phi.roots().size()) + " roots");
            std::vector<PointMass> masses;
            for (std::size_t k = 0; k < weights.size(); ++k) masses.push_back({out.phi.roots()[k].value, weights[k]});
            out.psi = out.phi;
            out.free = free_moments_for_masses(system[j], masses);
        } else {
            if (c.contains("psi")) out.psi = as_roots(c.at("psi"), where + ".psi");
            out.free.assign(out.psi.degree(), Rat(0));
            if (c.contains("free")) out.free = as_rats(c.at("free"), where + ".free");
            if (out.free.size() != out.psi.degree())
                throw ConfigError(where + ".free has " + std::to_string(out.free.size()) + " moments, psi has degree " +
                                  std::to_string(out.psi.degree()));
        }
        spec.components.push_back(std::move(out));
    }
    return spec;
}

inline std::vector<MultiIndex> parse_indices(const json& v, std::size_t r) {
    using namespace detail;
    check_keys(v, {"box", "list"}, "indices");
    if (v.contains("box") == v.contains("list")) throw ConfigError("indices needs exactly one of box and list");
    std::vector<MultiIndex> out;
    if (v.contains("box")) {
        const MultiIndex nmax = as_index(v.at("box"), "indices.box");
        if (nmax.size() != r) throw ConfigError("indices.box has arity " + std::to_string(nmax.size()) + ", need " +
                                                std::to_string(r));
        if (!nmax.is_nonnegative()) throw ConfigError("indices.box has a negative entry");
        out = box(nmax);
        std::stable_sort(out.begin(), out.end(), MultiIndexLess{});
    } else {
        const json& list = v.at("list");
        if (!list.is_array()) throw ConfigError("indices.list must be an array");
        for (std::size_t i = 0; i < list.size(); ++i) {
            const std::string where = "indices.list[" + std::to_string(i) + "]";
            MultiIndex n = as_index(list[i], where);
            if (n.size() != r) throw ConfigError(where + " has arity " + std::to_string(n.size()));
            if (!n.is_nonnegative()) throw ConfigError(where + " has a negative entry");
            out.push_back(std::move(n));
        }
    }
    return out;
}

inline JobConfig parse_job(const json& v) {
    using namespace detail;
    check_keys(v, {"schema", "mode", "system", "transform", "geronimus", "q_mode", "indices", "types", "sequence",
                   "format"},
               "job");
    const std::string schema = as_string(require(v, "schema", "job"), "schema");
    if (schema != kJobSchema) throw ConfigError("unsupported schema \"" + schema + "\", expected " + kJobSchema);
    JobConfig job;
    try {
        if (v.contains("mode")) job.mode = parse_mode(as_string(v.at("mode"), "mode"));
        if (v.contains("format")) job.format = parse_format(as_string(v.at("format"), "format"));
        if (v.contains("sequence")) job.sequence = as_string(v.at("sequence"), "sequence");

        const json& sys = require(v, "system", "job");
        if (!sys.is_array() || sys.empty()) throw ConfigError("system must be a nonempty array of functionals");
        for (std::size_t j = 0; j < sys.size(); ++j)
            job.system.push_back(as_functional(sys[j], "system[" + std::to_string(j) + "]"));

        if (v.contains("transform")) job.transform = parse_transform(v.at("transform"), job.system);
        if (v.contains("geronimus")) {
            const json& g = v.at("geronimus");
            check_keys(g, {"type1", "type2"}, "geronimus");
            if (g.contains("type1")) job.geronimus_type1 = as_choice(g.at("type1"), "geronimus.type1");
            if (g.contains("type2")) job.geronimus_type2 = as_choice(g.at("type2"), "geronimus.type2");
        }
        if (v.contains("q_mode")) {
            const std::string q = as_string(v.at("q_mode"), "q_mode");
            if (q == "full") job.q_mode = QMode::Full;
            else if (q == "simplified") job.q_mode = QMode::SimplifiedUvarov;
            else throw ConfigError("q_mode must be \"full\" or \"simplified\"");
        }
        if (v.contains("types")) {
            const json& t = v.at("types");
            if (!t.is_array() || t.empty()) throw ConfigError("types must be a nonempty array of \"I\" and \"II\"");
            job.type1 = job.type2 = false;
            for (std::size_t i = 0; i < t.size(); ++i)
                (as_side(t[i], "types[" + std::to_string(i) + "]") == Side::TypeI ? job.type1 : job.type2) = true;
        }
        job.indices = parse_indices(require(v, "indices", "job"), job.r());
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    return job;
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

inline JobConfig load_job(const std::string& path) { return parse_job(read_json_file(path)); }

/// {"schema": "mopr-seq/1", "sequences": [{"index", "type", "kind", "from", "to", "order", "elements"}]}.
/// Component numbers in "order" are 1-based.
inline std::vector<SequenceEntry> parse_sequence_file(const json& v, std::size_t r) {
    using namespace detail;
    check_keys(v, {"schema", "sequences"}, "sequence file");
    const std::string schema = as_string(require(v, "schema", "sequence file"), "schema");
    if (schema != kSequenceSchema)
        throw ConfigError("unsupported sequence schema \"" + schema + "\", expected " + kSequenceSchema);
    const json& list = require(v, "sequences", "sequence file");
    if (!list.is_array()) throw ConfigError("sequences must be an array");
    std::vector<SequenceEntry> out;
    for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string where = "sequences[" + std::to_string(i) + "]";
        const json& e = list[i];
        check_keys(e, {"index", "type", "kind", "from", "to", "order", "elements"}, where);
        SequenceEntry s;
        s.index = as_index(require(e, "index", where), where + ".index");
        s.side = as_side(require(e, "type", where), where + ".type");
        s.kind = as_string(require(e, "kind", where), where + ".kind");
        if (s.kind != "path" && s.kind != "frame" && s.kind != "explicit")
            throw ConfigError(where + ".kind must be path, frame or explicit");
        if (e.contains("from")) s.from = as_index(e.at("from"), where + ".from");
        if (e.contains("to")) s.to = as_index(e.at("to"), where + ".to");
        if (e.contains("order")) {
            if (s.kind != "path") throw ConfigError(where + ".order is only meaningful for a path");
            const MultiIndex order = as_index(e.at("order"), where + ".order");
            for (int k : order.values()) {
                if (k < 1 || static_cast<std::size_t>(k) > r)
                    throw ConfigError(where + ".order names component " + std::to_string(k));
                s.order.push_back(static_cast<std::size_t>(k - 1));
            }
        }
        if (e.contains("elements")) {
            if (s.kind != "explicit") throw ConfigError(where + ".elements is only meaningful for kind explicit");
            const json& els = e.at("elements");
            if (!els.is_array()) throw ConfigError(where + ".elements must be an array");
            for (std::size_t k = 0; k < els.size(); ++k)
                s.elements.push_back(as_index(els[k], where + ".elements[" + std::to_string(k) + "]"));
        } else if (s.kind == "explicit") {
            throw ConfigError(where + " of kind explicit needs elements");
        }
        for (const auto* m : {&s.index, s.from ? &*s.from : nullptr, s.to ? &*s.to : nullptr})
            if (m && m->size() != r) throw ConfigError(where + " has an index of the wrong arity");
        for (const auto& m : s.elements)
            if (m.size() != r) throw ConfigError(where + " has an element of the wrong arity");
        out.push_back(std::move(s));
    }
    return out;
}

/// "frame", "path" or "file:PATH".
inline SequenceChoice parse_sequence_choice(const std::string& text, std::size_t r) {
    SequenceChoice out;
    if (text == "frame") return out;
    if (text == "path") {
        out.kind = SequenceChoice::Kind::Path;
        return out;
    }
    if (text.rfind("file:", 0) == 0 && text.size() > 5) {
        out.kind = SequenceChoice::Kind::File;
        out.path = text.substr(5);
        out.entries = parse_sequence_file(read_json_file(out.path), r);
        return out;
    }
    throw ConfigError("sequence must be path, frame or file:PATH, got \"" + text + "\"");
}

}  // namespace mopr::cli
