#include "asa/json_io.hpp"

#include <sstream>

#include "asa/errors.hpp"

namespace asa {

ordered_json matrix_to_json(const IntMatrix& m) {
    // Row-major arrays of decimal strings. Zero-row matrices keep an explicit
    // shape since [] would lose the column count.
    if (m.rows() == 0) {
        ordered_json j;
        j["rows"] = 0;
        j["cols"] = m.cols();
        j["entries"] = ordered_json::array();
        return j;
    }
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).get_str());
        rows.push_back(std::move(row));
    }
    return rows;
}

IntMatrix matrix_from_json(const ordered_json& j) {
    try {
        if (j.is_object()) {
            int rows = j.at("rows").get<int>();
            int cols = j.at("cols").get<int>();
            IntMatrix m(rows, cols);
            const auto& entries = j.at("entries");
            if (static_cast<int>(entries.size()) != rows) throw parse_error("matrix row count");
            for (int i = 0; i < rows; ++i)
                for (int c = 0; c < cols; ++c) {
                    const auto& cell = entries[i][c];
                    m.at(i, c) = cell.is_string() ? mpz_class(cell.get<std::string>())
                                                  : mpz_class(cell.get<long>());
                }
            return m;
        }
        const int rows = static_cast<int>(j.size());
        const int cols = rows == 0 ? 0 : static_cast<int>(j[0].size());
        IntMatrix m(rows, cols);
        for (int i = 0; i < rows; ++i) {
            if (static_cast<int>(j[i].size()) != cols) throw parse_error("ragged matrix JSON");
            for (int c = 0; c < cols; ++c) {
                const auto& cell = j[i][c];
                m.at(i, c) = cell.is_string() ? mpz_class(cell.get<std::string>())
                                              : mpz_class(cell.get<long>());
            }
        }
        return m;
    } catch (const parse_error&) {
        throw;
    } catch (const std::exception& e) {
        throw parse_error(std::string("bad matrix JSON: ") + e.what());
    }
}

ordered_json group_to_json(const FiniteGroup& g) {
    ordered_json table = ordered_json::array();
    for (int a = 0; a < g.order(); ++a) {
        ordered_json row = ordered_json::array();
        for (int b = 0; b < g.order(); ++b) row.push_back(g.op(a, b));
        table.push_back(std::move(row));
    }
    ordered_json j;
    j["order"] = g.order();
    j["table"] = std::move(table);
    return j;
}

FiniteGroup group_from_json(const ordered_json& j) {
    try {
        int order = j.at("order").get<int>();
        std::vector<std::vector<int>> table(order);
        for (int a = 0; a < order; ++a)
            table[a] = j.at("table")[a].get<std::vector<int>>();
        return FiniteGroup::from_table(table);
    } catch (const invariant_error&) {
        throw;
    } catch (const std::exception& e) {
        throw parse_error(std::string("bad group JSON: ") + e.what());
    }
}

ordered_json module_to_json(const GaloisModule& m) {
    ordered_json j;
    j["group"] = group_to_json(m.group());
    j["rank"] = m.rank();
    j["relations"] = matrix_to_json(m.relations());
    ordered_json action = ordered_json::array();
    for (const auto& a : m.actions()) action.push_back(matrix_to_json(a));
    j["action"] = std::move(action);
    return j;
}

GaloisModule module_from_json(const ordered_json& j) {
    try {
        FiniteGroup g = group_from_json(j.at("group"));
        int rank = j.at("rank").get<int>();
        IntMatrix rel = matrix_from_json(j.at("relations"));
        std::vector<IntMatrix> action;
        for (const auto& a : j.at("action")) action.push_back(matrix_from_json(a));
        return GaloisModule(std::move(g), rank, std::move(rel), std::move(action));
    } catch (const invariant_error&) {
        throw;
    } catch (const parse_error&) {
        throw;
    } catch (const std::exception& e) {
        throw parse_error(std::string("bad module JSON: ") + e.what());
    }
}

ordered_json fgab_to_json(const FgAbGroup& g) {
    ordered_json j;
    j["free_rank"] = g.free_rank();
    ordered_json factors = ordered_json::array();
    for (const auto& d : g.invariant_factors()) factors.push_back(d.get_str());
    j["invariant_factors"] = std::move(factors);
    j["rendered"] = g.to_string();
    if (auto o = g.order()) j["order"] = o->get_str();
    return j;
}

ordered_json density_to_json(const DensityEstimate& e) {
    ordered_json j;
    j["value"] = e.value;
    j["bound"] = e.prime_bound;
    j["primes_total"] = e.prime_count_total;
    j["primes_matching"] = e.prime_count_matching;
    j["mode"] = e.mode == DensityMode::Natural ? "natural" : "dirichlet";
    if (e.mode == DensityMode::Dirichlet) j["s"] = e.dirichlet_s;
    j["interval"] = ordered_json::array({std::max(0.0, e.value - e.err),
                                         std::min(1.0, e.value + e.err)});
    return j;
}

ordered_json relation_to_json(const DensityRelationReport& r) {
    ordered_json j;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["difference"] = r.difference;
    j["bound"] = r.prime_bound;
    j["degree"] = r.field_degree;
    if (r.galois_warning) j["warning"] = *r.galois_warning;
    return j;
}

namespace {

ordered_json delta_to_json(const DeltaInfo& d) {
    ordered_json j;
    j["kind"] = d.exact ? "exact" : "estimate";
    if (d.exact) {
        j["value"] = d.value.get_str();
    } else {
        j["value"] = d.estimate;
        j["interval"] = ordered_json::array({d.lo, d.hi});
    }
    j["source"] = d.source;
    return j;
}

}  // namespace

ordered_json report_to_json(const AsaReport& r) {
    ordered_json j;
    j["verdict"] = verdict_string(r.verdict);
    j["delta"] = delta_to_json(r.delta);
    ordered_json factors;
    factors["r"] = r.rank_r;
    factors["h1"] = r.h1_size.get_str();
    factors["h2"] = r.h2_size.get_str();
    j["factors"] = std::move(factors);
    if (r.bound_exact) {
        j["bound"] = r.bound.get_str();
    } else {
        j["bound"] = nullptr;
        j["bound_interval"] = ordered_json::array({r.bound_lo, r.bound_hi});
    }
    if (r.exact_b_s) j["exact_b_s"] = fgab_to_json(*r.exact_b_s);
    j["provenance"] = r.provenance;
    if (!r.notes.empty()) j["notes"] = r.notes;
    return j;
}

ordered_json going_to_json(const GoingOverLReport& r) {
    ordered_json j;
    j["case"] = r.case_name;
    j["kernel"] = fgab_to_json(r.kernel_group);
    j["cokernel"] = fgab_to_json(r.cokernel_group);
    j["decided"] = r.decided;
    if (r.decided) {
        j["exponent"] = r.exponent;
    } else {
        j["candidate_exponents"] =
            ordered_json::array({r.candidate_exponent_torus, r.candidate_exponent_semisimple});
    }
    j["h2_kernel"] = r.h2_kernel.get_str();
    j["h1_cokernel"] = r.h1_cokernel.get_str();
    j["delta"] = delta_to_json(r.delta);
    if (r.decided) {
        if (r.bound_exact)
            j["bound"] = r.bound.get_str();
        else
            j["bound_interval"] = ordered_json::array({r.bound_lo, r.bound_hi});
    }
    j["provenance"] = ordered_json::array({"bound<-hochschild-counting"});
    return j;
}

ordered_json quasiiso_to_json(const QuasiIsoReport& r) {
    ordered_json j;
    j["entry"] = r.entry;
    j["gamma"] = r.gamma;
    j["h1_C"] = fgab_to_json(r.h1_c);
    j["h1_C0"] = fgab_to_json(r.h1_c0);
    j["equal_order"] = r.equal_order;
    j["provenance"] = ordered_json::array({"equality<-cor-C0"});
    return j;
}

ordered_json longexact_to_json(const LongExactReport& r) {
    ordered_json j;
    j["groups"] = r.groups;
    ordered_json junctions = ordered_json::array();
    for (const auto& x : r.junctions) {
        ordered_json jj;
        jj["at"] = x.at;
        jj["image_order"] = x.image_order.get_str();
        jj["kernel_order"] = x.kernel_order.get_str();
        jj["composite_zero"] = x.composite_zero;
        jj["exact"] = x.exact;
        junctions.push_back(std::move(jj));
    }
    j["junctions"] = std::move(junctions);
    j["all_exact"] = r.all_exact;
    return j;
}

std::string render_report_text(const AsaReport& r) {
    std::ostringstream os;
    os << "verdict: " << verdict_string(r.verdict) << "\n";
    if (r.delta.exact)
        os << "delta:   " << r.delta.value.get_str() << " (exact, " << r.delta.source << ")\n";
    else
        os << "delta:   " << r.delta.estimate << " in [" << r.delta.lo << ", " << r.delta.hi
           << "] (" << r.delta.source << ")\n";
    os << "factors: r = " << r.rank_r << ", |H1| = " << r.h1_size.get_str()
       << ", |H2| = " << r.h2_size.get_str() << "\n";
    if (r.bound_exact)
        os << "bound:   " << r.bound.get_str() << "\n";
    else
        os << "bound:   [" << r.bound_lo << ", " << r.bound_hi << "]\n";
    if (r.exact_b_s) os << "B_S:     " << r.exact_b_s->to_string() << "\n";
    for (const auto& p : r.provenance) os << "rule:    " << p << "\n";
    for (const auto& n : r.notes) os << "note:    " << n << "\n";
    return os.str();
}

}  // namespace asa
