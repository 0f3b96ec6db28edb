#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "mopr/cli/config.hpp"
#include "mopr/matrix.hpp"
#include "mopr/mop.hpp"
#include "mopr/transform.hpp"

namespace mopr::cli {

inline constexpr const char* kOutputSchema = "mopr-output/1";

struct RunOptions {
    Mode mode = Mode::Compute;
    Format format = Format::Csv;
    std::string sequence = "frame";
    std::size_t jobs = 1;
};

struct Row {
    MultiIndex index;
    std::string kind;
    std::optional<std::size_t> component;  ///< 0-based
    std::optional<Poly> poly;
    std::optional<Rat> dn;
    std::optional<bool> normal;
    std::optional<bool> check;  ///< verify only
    std::string failure;        ///< verify only: first failing condition of this row
};

struct RunResult {
    int status = 0;
    std::string output;
    std::string diagnostics;
};

namespace detail {

struct IndexResult {
    std::vector<Row> rows;
    std::vector<VerifyFailure> failures;
    std::size_t checks = 0;
    std::optional<std::string> config_error;
};

/// Runs fn(i) for i < count on up to `jobs` threads; results land in index order.
template <class Fn>
std::vector<IndexResult> run_parallel(std::size_t count, std::size_t jobs, Fn fn) {
    std::vector<IndexResult> out(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                out[i] = fn(i);
            } catch (const Error& e) {
                out[i].config_error = e.what();
            }
        }
    };
    const std::size_t n = std::max<std::size_t>(1, std::min(jobs, count));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return out;
}

inline Rat moment_det(const System& s, const MultiIndex& n) { return det_rat(s.moment_matrix(n)); }

inline std::optional<IndexSeq> select_sequence(const SequenceChoice& choice, Side side, const TransformSpec& spec,
                                               const MultiIndex& n) {
    MultiIndex from, to;
    if (side == Side::TypeII) {
        const auto plan = plan_type2(spec, n);
        from = n + MultiIndex::unit(n.size(), 0, static_cast<int>(plan.N));
        to = plan.target;
    } else {
        from = default_type1_start(spec, n);
        to = plan_type1(spec, n).to;
    }
    switch (choice.kind) {
        case SequenceChoice::Kind::Frame: return std::nullopt;
        case SequenceChoice::Kind::Path: return path(from, to);
        case SequenceChoice::Kind::File: break;
    }
    for (const auto& e : choice.entries) {
        if (e.index != n || e.side != side) continue;
        if (e.to) to = *e.to;
        if (e.kind == "explicit") {
            return explicit_sequence(e.from ? *e.from : e.elements.front(), to, e.elements);
        }
        if (e.from) from = *e.from;
        if (e.kind == "frame") return frame(from, to);
        return e.order.empty() ? path(from, to) : path(from, to, e.order);
    }
    return std::nullopt;
}

inline IndexResult compute_index(const System& s, const JobConfig& job, const MultiIndex& n) {
    IndexResult out;
    const bool normal = s.is_normal(n);
    const Rat dn = moment_det(s, n);
    if (job.type2) {
        Row row{n, "II", std::nullopt, std::nullopt, dn, normal, std::nullopt, {}};
        if (normal) row.poly = s.type2_monic(n).p;
        out.rows.push_back(std::move(row));
    }
    if (job.type1 && !n.is_zero()) {
        std::optional<TypeIVector> a;
        if (normal) a = s.type1_normalized(n);
        for (std::size_t j = 0; j < s.r(); ++j) {
            Row row{n, "I", j, std::nullopt, dn, normal, std::nullopt, {}};
            if (a) row.poly = a->a[j];
            out.rows.push_back(std::move(row));
        }
    }
    return out;
}

inline void add_failure_rows(IndexResult& out, const MultiIndex& n, const std::string& kind, std::size_t r,
                             bool per_component, const std::string& what, bool verify) {
    const std::size_t count = per_component ? r : 1;
    for (std::size_t j = 0; j < count; ++j) {
        Row row{n, kind, per_component ? std::optional<std::size_t>(j) : std::nullopt, std::nullopt, std::nullopt,
                std::nullopt, std::nullopt, {}};
        if (verify) {
            row.check = false;
            row.failure = what;
        }
        out.rows.push_back(std::move(row));
    }
}

inline IndexResult transform_index(const RationalTransform& t, const JobConfig& job, const SequenceChoice& seq,
                                   const MultiIndex& n, bool verify) {
    IndexResult out;
    const std::size_t r = t.spec().r();
    auto run_side = [&](Side side) {
        const std::string kind = side == Side::TypeII ? "II" : "I";
        try {
            const auto chosen = select_sequence(seq, side, t.spec(), n);
            std::vector<Row> rows;
            VerifyReport rep;
            if (side == Side::TypeII) {
                const auto res = t.type2(n, chosen, job.q_mode);
                Row row{n, kind, std::nullopt, res.has_normalization() ? res.normalized() : res.raw, res.dn,
                        res.has_normalization(), std::nullopt, {}};
                rows.push_back(std::move(row));
                if (verify) rep = verify_transform(t.transformed(), res);
            } else {
                const auto res = t.type1(n, chosen);
                const auto polys = res.has_normalization() ? res.normalized() : res.raw;
                for (std::size_t j = 0; j < r; ++j)
                    rows.push_back(Row{n, kind, j, polys[j], res.dn, res.has_normalization(), std::nullopt, {}});
                if (verify) rep = verify_transform(t.transformed(), res);
            }
            if (verify) {
                ++out.checks;
                const bool normal = t.transformed().is_normal(n);
                for (auto& row : rows) {
                    row.normal = normal;
                    row.check = true;
                    for (const auto& f : rep.failures)
                        if (!f.component || !row.component || *f.component == *row.component) {
                            row.check = false;
                            row.failure = f.to_string();
                            break;
                        }
                }
                out.failures.insert(out.failures.end(), rep.failures.begin(), rep.failures.end());
            }
            out.rows.insert(out.rows.end(), rows.begin(), rows.end());
        } catch (const NotNormal& e) {
            // The base system is not normal along the chosen sequence.
            const std::string what = std::string("hypothesis at n=") + n.to_string() + ": " + e.what();
            if (verify) {
                ++out.checks;
                out.failures.push_back({"hypothesis", n, std::nullopt, std::nullopt, e.what()});
            }
            add_failure_rows(out, n, kind, r, side == Side::TypeI, what, verify);
        } catch (const Error& e) {
            out.config_error = "n=" + n.to_string() + " type " + kind + ": " + e.what();
        }
    };
    if (job.type2) run_side(Side::TypeII);
    if (job.type1 && !n.is_zero()) run_side(Side::TypeI);
    return out;
}

inline IndexResult sweep_index(const System& base, const std::optional<System>& transformed, const MultiIndex& n) {
    IndexResult out;
    out.rows.push_back(Row{n, "base", std::nullopt, std::nullopt, moment_det(base, n), base.is_normal(n),
                           std::nullopt, {}});
    if (transformed)
        out.rows.push_back(Row{n, "transformed", std::nullopt, std::nullopt, moment_det(*transformed, n),
                               transformed->is_normal(n), std::nullopt, {}});
    return out;
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(";\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

inline std::vector<std::string> row_cells(const Row& row, bool verify) {
    std::vector<std::string> cells{
        row.index.to_string(),
        row.kind,
        row.component ? std::to_string(*row.component + 1) : "",
        row.poly ? row.poly->to_string() : "",
        row.dn ? format_rat(*row.dn) : "",
        row.normal ? (*row.normal ? "true" : "false") : "",
    };
    if (verify) {
        cells.push_back(row.check ? (*row.check ? "ok" : "FAIL") : "");
        cells.push_back(row.failure);
    }
    return cells;
}

inline std::vector<std::string> header(bool verify) {
    std::vector<std::string> h{"index", "kind", "component", "polynomial", "Dn", "normal"};
    if (verify) {
        h.push_back("check");
        h.push_back("failure");
    }
    return h;
}

using ojson = nlohmann::ordered_json;

inline ojson failure_json(const VerifyFailure& f) {
    ojson out;
    out["condition"] = f.condition;
    out["index"] = f.index.values();
    out["component"] = f.component ? ojson(*f.component + 1) : ojson(nullptr);
    out["power"] = f.power ? ojson(*f.power) : ojson(nullptr);
    out["detail"] = f.detail;
    return out;
}

}  // namespace detail

struct Summary {
    std::size_t checks = 0;
    std::vector<VerifyFailure> failures;
    std::optional<bool> base_perfect, transformed_perfect;
};

inline std::string emit(const std::vector<Row>& rows, const RunOptions& opt, const Summary& sum) {
    using namespace detail;
    const bool verify = opt.mode == Mode::Verify;
    std::ostringstream os;
    if (opt.format == Format::Csv) {
        const auto h = header(verify);
        for (std::size_t i = 0; i < h.size(); ++i) os << (i ? ";" : "") << h[i];
        os << "\n";
        for (const auto& row : rows) {
            const auto cells = row_cells(row, verify);
            for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? ";" : "") << csv_field(cells[i]);
            os << "\n";
        }
        return os.str();
    }
    if (opt.format == Format::Json) {
        ojson out;
        out["schema"] = kOutputSchema;
        out["mode"] = mode_name(opt.mode);
        ojson list = ojson::array();
        for (const auto& row : rows) {
            ojson r;
            r["index"] = row.index.values();
            r["kind"] = row.kind;
            r["component"] = row.component ? ojson(*row.component + 1) : ojson(nullptr);
            if (row.poly) {
                ojson p;
                ojson coeffs = ojson::array();
                for (const auto& c : row.poly->coefficients()) coeffs.push_back(format_rat(c));
                p["coefficients"] = coeffs;
                p["text"] = row.poly->to_string();
                r["polynomial"] = p;
            } else {
                r["polynomial"] = nullptr;
            }
            r["Dn"] = row.dn ? ojson(format_rat(*row.dn)) : ojson(nullptr);
            r["normal"] = row.normal ? ojson(*row.normal) : ojson(nullptr);
            if (verify) {
                r["check"] = row.check ? ojson(*row.check) : ojson(nullptr);
                r["failure"] = row.failure.empty() ? ojson(nullptr) : ojson(row.failure);
            }
            list.push_back(std::move(r));
        }
        out["rows"] = list;
        if (verify) {
            ojson rep;
            rep["ok"] = sum.failures.empty();
            rep["checks"] = sum.checks;
            rep["first_failure"] = sum.failures.empty() ? ojson(nullptr) : failure_json(sum.failures.front());
            ojson all = ojson::array();
            for (const auto& f : sum.failures) all.push_back(failure_json(f));
            rep["failures"] = all;
            out["report"] = rep;
        }
        if (opt.mode == Mode::Sweep) {
            ojson perfect;
            perfect["base"] = *sum.base_perfect;
            perfect["transformed"] = sum.transformed_perfect ? ojson(*sum.transformed_perfect) : ojson(nullptr);
            out["perfect"] = perfect;
        }
        os << out.dump(2) << "\n";
        return os.str();
    }

    std::vector<std::vector<std::string>> table{header(verify)};
    for (const auto& row : rows) table.push_back(row_cells(row, verify));
    std::vector<std::size_t> width(table.front().size(), 0);
    for (const auto& line : table)
        for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
    for (const auto& line : table) {
        std::string text;
        for (std::size_t i = 0; i < line.size(); ++i) {
            text += line[i];
            if (i + 1 < line.size()) text += std::string(width[i] - line[i].size() + 2, ' ');
        }
        while (!text.empty() && text.back() == ' ') text.pop_back();
        os << text << "\n";
    }
    if (verify) {
        os << "\nverify: " << (sum.failures.empty() ? "ok" : "FAILED") << ", " << sum.checks << " checks, "
           << sum.failures.size() << " failures\n";
        if (!sum.failures.empty()) os << "first failure: " << sum.failures.front().to_string() << "\n";
    }
    if (opt.mode == Mode::Sweep) {
        os << "\nbase perfect on indices: " << (*sum.base_perfect ? "yes" : "no") << "\n";
        if (sum.transformed_perfect)
            os << "transformed perfect on indices: " << (*sum.transformed_perfect ? "yes" : "no") << "\n";
    }
    return os.str();
}

/// Exit status 2 on a configuration error, 1 when verification fails, 0 otherwise.
inline RunResult run(const JobConfig& job, const RunOptions& opt) {
    using namespace detail;
    RunResult result;
    try {
        if (job.mode && *job.mode != opt.mode)
            throw ConfigError("config mode " + mode_name(*job.mode) + " does not match subcommand " +
                              mode_name(opt.mode));
        const System base(job.system);
        const auto& indices = job.indices;
        std::vector<IndexResult> per_index;
        Summary sum;

        if (opt.mode == Mode::Compute) {
            per_index = run_parallel(indices.size(), opt.jobs,
                                     [&](std::size_t i) { return compute_index(base, job, indices[i]); });
        } else if (opt.mode == Mode::Sweep) {
            std::optional<System> transformed;
            if (job.transform) transformed = make_transformed_system(base, *job.transform);
            per_index = run_parallel(indices.size(), opt.jobs,
                                     [&](std::size_t i) { return sweep_index(base, transformed, indices[i]); });
            sum.base_perfect = true;
            if (transformed) sum.transformed_perfect = true;
            for (const auto& res : per_index)
                for (const auto& row : res.rows) {
                    auto& flag = row.kind == "base" ? sum.base_perfect : sum.transformed_perfect;
                    *flag = *flag && *row.normal;
                }
        } else {
            if (!job.transform) throw ConfigError(mode_name(opt.mode) + " needs a transform section");
            const SequenceChoice seq = parse_sequence_choice(opt.sequence, job.r());
            const RationalTransform t(base, *job.transform, job.geronimus_type1, job.geronimus_type2);
            const bool verify = opt.mode == Mode::Verify;
            per_index = run_parallel(indices.size(), opt.jobs, [&](std::size_t i) {
                return transform_index(t, job, seq, indices[i], verify);
            });
        }

        std::vector<Row> rows;
        for (auto& res : per_index) {
            if (res.config_error) throw ConfigError(*res.config_error);
            rows.insert(rows.end(), res.rows.begin(), res.rows.end());
            sum.checks += res.checks;
            sum.failures.insert(sum.failures.end(), res.failures.begin(), res.failures.end());
        }
        result.output = emit(rows, opt, sum);
        if (opt.mode == Mode::Verify) {
            std::ostringstream diag;
            diag << "verify: " << sum.checks << " checks, " << sum.failures.size() << " failures";
            if (!sum.failures.empty()) diag << "; first: " << sum.failures.front().to_string();
            result.diagnostics = diag.str() + "\n";
            result.status = sum.failures.empty() ? 0 : 1;
        }
    } catch (const Error& e) {
        result.status = 2;
        result.output.clear();
        result.diagnostics = std::string("error: ") + e.what() + "\n";
    }
    return result;
}

}  // namespace mopr::cli
