#include "canram/preadjunction.hpp"

#include <algorithm>
#include <set>

#include "canram/enumerate.hpp"
#include "canram/errors.hpp"
#include "canram/parallel.hpp"

namespace canram {

namespace {

void check_scale_shape(std::span<const Rational> values, const char* who) {
    if (values.empty()) throw input_error(std::string(who) + ": empty scale");
    if (values[0] != rat(0)) throw input_error(std::string(who) + ": scale must start at 0");
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] <= values[i - 1])
            throw input_error(std::string(who) + ": scale must be strictly increasing");
}

} // namespace

bool is_tight(std::span<const Rational> values) {
    check_scale_shape(values, "is_tight");
    const int l = static_cast<int>(values.size()) - 1;
    for (int i = 1; i <= l; ++i)
        for (int j = i; i + j <= l; ++j)
            if (values[i + j] > values[i] + values[j]) return false;
    return true;
}

TightSet make_tight_set(std::vector<Rational> values) {
    if (!is_tight(values)) throw input_error("make_tight_set: scale is not tight");
    return TightSet{std::move(values)};
}

std::optional<TightSet> tight_extension(std::span<const Rational> s,
                                        const TightSearchOptions& opts) {
    std::vector<Rational> base(s.begin(), s.end());
    std::sort(base.begin(), base.end());
    base.erase(std::unique(base.begin(), base.end()), base.end());
    if (base.size() < 2) throw input_error("tight_extension: need at least two distinct values");
    if (base[0] != rat(0)) throw input_error("tight_extension: 0 must be present");
    const Rational top = base.back();

    // Additive closure of the positive part, truncated at the maximum.
    std::set<Rational> pool(base.begin() + 1, base.end());
    std::vector<Rational> work(pool.begin(), pool.end());
    while (!work.empty()) {
        const Rational v = work.back();
        work.pop_back();
        for (std::size_t i = 1; i < base.size(); ++i) {
            const Rational w = v + base[i];
            if (w > top) continue;
            if (pool.insert(w).second) {
                if (pool.size() > opts.max_candidates)
                    throw budget_exceeded("tight_extension: candidate pool cap hit",
                                          static_cast<std::uint64_t>(pool.size()));
                work.push_back(w);
            }
        }
    }
    std::vector<Rational> candidates;
    for (const Rational& v : pool)
        if (!std::binary_search(base.begin(), base.end(), v)) candidates.push_back(v);

    std::uint64_t examined = 0;
    const int c = static_cast<int>(candidates.size());
    for (int size = 0; size <= c; ++size) {
        std::vector<int> pick(size);
        for (int i = 0; i < size; ++i) pick[i] = i;
        while (true) {
            if (++examined > opts.max_subsets)
                throw budget_exceeded("tight_extension: subset cap hit", examined - 1);
            std::vector<Rational> t = base;
            for (int i : pick) t.push_back(candidates[i]);
            std::sort(t.begin(), t.end());
            if (is_tight(t)) return TightSet{std::move(t)};
            int i = size - 1;
            while (i >= 0 && pick[i] == c - size + i) --i;
            if (i < 0) break;
            ++pick[i];
            for (int j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    return std::nullopt;
}

OrderedStructure f_obj(const OrderedStructure& m, const TightSet& s) {
    if (m.kind != Kind::OrderedMetric)
        throw input_error("f_obj: expected a metric space");
    const auto attained = spectre(m);
    if (!std::includes(s.values.begin(), s.values.end(), attained.begin(), attained.end()))
        throw input_error("f_obj: the spectre is not contained in the scale");
    const int k = s.levels();
    const int mn = m.n;
    const auto& d = m.metric().d;
    std::vector<Pair> leq;
    for (int i = 0; i <= k; ++i)
        for (int j = i; j <= k; ++j)
            for (int x = 0; x < mn; ++x)
                for (int y = 0; y < mn; ++y)
                    if (d[static_cast<std::size_t>(x) * mn + y] <= s.values[j] - s.values[i])
                        leq.push_back({i * mn + x, j * mn + y});
    OrderedStructure out = make_poset(mn * (k + 1), std::move(leq));
    if (auto report = validate(out); !report.ok())
        throw internal_inconsistency("f_obj: level poset fails validation: " +
                                     report.violations.front().axiom);
    return out;
}

namespace {

std::uint64_t checked_power(int base, int exp, std::uint64_t cap, const char* who) {
    std::uint64_t count = 1;
    for (int i = 0; i < exp; ++i) {
        if (base > 0 && count > cap / static_cast<std::uint64_t>(base))
            throw budget_exceeded(std::string(who) + ": tuple space size exceeds cap", cap);
        count *= static_cast<std::uint64_t>(base);
    }
    if (count > cap)
        throw budget_exceeded(std::string(who) + ": tuple space size exceeds cap", count);
    return count;
}

} // namespace

OrderedStructure g_obj(const OrderedStructure& p, const TightSet& s, std::uint64_t cap) {
    if (p.kind != Kind::PosetLE) throw input_error("g_obj: expected a poset");
    const int k = s.levels();
    const int np = p.n;
    const std::uint64_t count = checked_power(np, k, cap, "g_obj");
    const int n = static_cast<int>(count);

    std::vector<bool> below(static_cast<std::size_t>(np) * np, false);
    for (const auto& [a, b] : p.poset().leq) below[static_cast<std::size_t>(a) * np + b] = true;
    auto leq = [&](int a, int b) { return below[static_cast<std::size_t>(a) * np + b]; };

    std::vector<std::vector<int>> tuples(n);
    for (int t = 0; t < n; ++t) {
        std::vector<int> digits(k);
        int rest = t;
        for (int i = k - 1; i >= 0; --i) {
            digits[i] = rest % np;
            rest /= np;
        }
        tuples[t] = std::move(digits);
    }

    std::vector<Rational> d(static_cast<std::size_t>(n) * n, rat(0));
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            int j = k;
            for (int shift = 0; shift < k; ++shift) {
                bool fits = true;
                for (int i = 0; i + shift <= k - 1; ++i)
                    if (!leq(tuples[a][i], tuples[b][i + shift]) ||
                        !leq(tuples[b][i], tuples[a][i + shift])) {
                        fits = false;
                        break;
                    }
                if (fits) {
                    j = shift;
                    break;
                }
            }
            d[static_cast<std::size_t>(a) * n + b] = s.values[j];
            d[static_cast<std::size_t>(b) * n + a] = s.values[j];
        }

    OrderedStructure out = make_metric(n, std::move(d));
    if (auto report = validate(out); !report.ok()) {
        if (!is_tight(s.values))
            throw input_error("g_obj: scale is not tight; axiom '" +
                              report.violations.front().axiom + "' fails");
        throw internal_inconsistency("g_obj: tuple metric fails validation: " +
                                     report.violations.front().axiom);
    }
    return out;
}

Embedding phi(const Embedding& u, const OrderedStructure& m, const TightSet& s,
              StructureRef g_target) {
    const OrderedStructure level = f_obj(m, s);
    if (!u.source || *u.source != level)
        throw input_error("phi: embedding does not start at the level poset of the space");
    const int k = s.levels();
    const int mn = m.n;
    const int np = u.target->n;
    StructureRef gp = g_target ? std::move(g_target) : share(g_obj(*u.target, s));

    std::vector<int> map(mn);
    for (int x = 0; x < mn; ++x) {
        long long idx = 0;
        for (int i = 0; i < k; ++i) idx = idx * np + u.map[i * mn + x];
        map[x] = static_cast<int>(idx);
    }
    Embedding out{share(m), std::move(gp), std::move(map)};
    if (!is_embedding(m, *out.target, out.map))
        throw internal_inconsistency(
            "phi: transferred map is not an embedding into the tuple space");
    return out;
}

Embedding f_mor(const Embedding& f, const TightSet& s) {
    const OrderedStructure& msrc = *f.source;
    const OrderedStructure& mdst = *f.target;
    OrderedStructure lsrc = f_obj(msrc, s);
    OrderedStructure ldst = f_obj(mdst, s);
    const int k = s.levels();
    std::vector<int> map(static_cast<std::size_t>(msrc.n) * (k + 1));
    for (int i = 0; i <= k; ++i)
        for (int x = 0; x < msrc.n; ++x) map[i * msrc.n + x] = i * mdst.n + f.map[x];
    if (!is_embedding(lsrc, ldst, map))
        throw internal_inconsistency("f_mor: level map is not an embedding");
    return Embedding{share(std::move(lsrc)), share(std::move(ldst)), std::move(map)};
}

bool cpa1_check(const Embedding& u, const Embedding& f, const TightSet& s,
                StructureRef g_target) {
    const Embedding lhs = compose(f, phi(u, *f.target, s, g_target));
    const Embedding rhs = phi(compose(f_mor(f, s), u), *f.source, s, std::move(g_target));
    return lhs.map == rhs.map;
}

std::vector<int> cpa2_project(std::span<const int> p_positions, int m_size) {
    if (p_positions.empty()) return {};
    if (m_size <= 0) throw input_error("cpa2_project: positions over an empty space");
    std::set<int> out;
    for (int p : p_positions) {
        if (p < 0) throw input_error("cpa2_project: negative position");
        out.insert(p % m_size);
    }
    return {out.begin(), out.end()};
}

Coloring cpa_chi_prime(const Coloring& chi, const OrderedStructure& e,
                       const OrderedStructure& c, const TightSet& s) {
    const StructureRef gc = share(g_obj(c, s));
    const auto hom_e_gc = enumerate_embeddings(share(e), gc);
    if (chi.colors.size() != hom_e_gc.size())
        throw input_error("cpa_chi_prime: coloring does not cover hom(e, g_obj(c))");
    const auto hom_fe_c = enumerate_embeddings(f_obj(e, s), c);
    Coloring out;
    out.colors.reserve(hom_fe_c.size());
    for (const auto& u : hom_fe_c) {
        const Embedding image = phi(u, e, s, gc);
        const int idx = hom_index(hom_e_gc, image.map);
        if (idx < 0)
            throw internal_inconsistency("cpa_chi_prime: phi image missing from the hom-set");
        out.colors.push_back(chi.colors[idx]);
    }
    return out;
}

CanonicalWitness cpa_transfer_witness(const Coloring& chi, const CanonicalWitness& wit_c,
                                      const OrderedStructure& e, const OrderedStructure& d_space,
                                      const TightSet& s) {
    CanonicalWitness out{phi(wit_c.w, d_space, s),
                         cpa2_project(wit_c.positions, e.n)};
    const auto hom_ed = enumerate_embeddings(e, d_space);
    const auto hom_e_gc = enumerate_embeddings(e, *out.w.target);
    if (!is_canonical_witness(chi, out, hom_ed, hom_e_gc))
        throw internal_inconsistency(
            "cpa_transfer_witness: transferred witness fails the canonical check");
    return out;
}

namespace {

struct SweepCell {
    std::uint64_t fobj_checked = 0, fobj_valid = 0;
    std::uint64_t gobj_checked = 0, gobj_valid = 0;
    std::uint64_t phi_checked = 0, phi_valid = 0;
    std::uint64_t cpa1_checked = 0, cpa1_ok = 0;
    std::uint64_t cpa2_checked = 0, cpa2_ok = 0;
    std::string first_failure;

    void fail(const std::string& what) {
        if (first_failure.empty()) first_failure = what;
    }
};

struct ScaleData {
    TightSet s;
    std::vector<StructureRef> spaces;            // all metric spaces over the scale
    std::vector<OrderedStructure> levels;        // f_obj per space
    std::vector<StructureRef> posets;            // targets up to the largest level size
};

} // namespace

CpaSweepReport run_cpa_sweep(const CpaSweepOptions& opts) {
    std::vector<ScaleData> data;
    for (const auto& s : opts.scales) {
        ScaleData sd;
        sd.s = s;
        std::vector<Rational> positive(s.values.begin() + 1, s.values.end());
        for (int n = 0; n <= opts.max_points; ++n)
            for (auto& m : all_metrics(n, positive)) sd.spaces.push_back(share(std::move(m)));
        int largest = 0;
        for (const auto& m : sd.spaces) {
            sd.levels.push_back(f_obj(*m, s));
            largest = std::max(largest, sd.levels.back().n);
        }
        for (int n = 0; n <= largest; ++n)
            for (auto& p : all_posets(n)) sd.posets.push_back(share(std::move(p)));
        data.push_back(std::move(sd));
    }

    // Job layout per scale: one f_obj job, one job per target poset (g_obj +
    // phi + CPA1), one job per space pair (CPA2).
    struct Job {
        int scale;
        int kind; // 0 = f_obj, 1 = poset, 2 = pair
        int index;
    };
    std::vector<Job> jobs;
    for (std::size_t si = 0; si < data.size(); ++si) {
        jobs.push_back({static_cast<int>(si), 0, 0});
        for (std::size_t pi = 0; pi < data[si].posets.size(); ++pi)
            jobs.push_back({static_cast<int>(si), 1, static_cast<int>(pi)});
        const int spaces = static_cast<int>(data[si].spaces.size());
        for (int pair = 0; pair < spaces * spaces; ++pair)
            jobs.push_back({static_cast<int>(si), 2, pair});
    }

    auto run_job = [&](std::size_t j) {
        const Job job = jobs[j];
        const ScaleData& sd = data[static_cast<std::size_t>(job.scale)];
        SweepCell cell;
        if (job.kind == 0) {
            for (std::size_t mi = 0; mi < sd.spaces.size(); ++mi) {
                ++cell.fobj_checked;
                if (validate(sd.levels[mi]).ok())
                    ++cell.fobj_valid;
                else
                    cell.fail("f_obj invalid for space " + std::to_string(mi));
            }
            return cell;
        }
        if (job.kind == 1) {
            const StructureRef& p = sd.posets[static_cast<std::size_t>(job.index)];
            ++cell.gobj_checked;
            StructureRef gp;
            try {
                gp = share(g_obj(*p, sd.s));
                ++cell.gobj_valid;
            } catch (const std::exception& ex) {
                cell.fail(std::string("g_obj failed: ") + ex.what());
                return cell;
            }
            for (std::size_t mi = 0; mi < sd.spaces.size(); ++mi) {
                const auto hom_up = enumerate_embeddings(share(sd.levels[mi]), p);
                for (const auto& u : hom_up) {
                    ++cell.phi_checked;
                    try {
                        phi(u, *sd.spaces[mi], sd.s, gp);
                        ++cell.phi_valid;
                    } catch (const std::exception& ex) {
                        cell.fail(std::string("phi failed: ") + ex.what());
                        continue;
                    }
                    for (std::size_t mj = 0; mj < sd.spaces.size(); ++mj)
                        for (const auto& f : enumerate_embeddings(sd.spaces[mj], sd.spaces[mi])) {
                            ++cell.cpa1_checked;
                            try {
                                if (cpa1_check(u, f, sd.s, gp))
                                    ++cell.cpa1_ok;
                                else
                                    cell.fail("CPA1 violated");
                            } catch (const std::exception& ex) {
                                cell.fail(std::string("CPA1 check failed: ") + ex.what());
                            }
                        }
                }
            }
            return cell;
        }
        const int spaces = static_cast<int>(sd.spaces.size());
        const int mi = job.index / spaces; // source space
        const int mj = job.index % spaces; // target space
        const auto hom = enumerate_embeddings(sd.spaces[mi], sd.spaces[mj]);
        const int src_n = sd.spaces[mi]->n;
        const int positions = src_n * (sd.s.levels() + 1);
        if (positions > 20) throw input_error("run_cpa_sweep: subset range too large");
        for (const auto& f : hom)
            for (const auto& g : hom) {
                Embedding lf, lg;
                try {
                    lf = f_mor(f, sd.s);
                    lg = f_mor(g, sd.s);
                } catch (const std::exception& ex) {
                    cell.fail(std::string("level map failed: ") + ex.what());
                    continue;
                }
                for (std::uint32_t mask = 0; mask < (1u << positions); ++mask) {
                    std::vector<int> p;
                    for (int b = 0; b < positions; ++b)
                        if (mask >> b & 1u) p.push_back(b);
                    bool lifted_agree = true;
                    for (int b : p)
                        if (lf.map[b] != lg.map[b]) {
                            lifted_agree = false;
                            break;
                        }
                    bool base_agree = true;
                    for (int x : cpa2_project(p, src_n))
                        if (f.map[x] != g.map[x]) {
                            base_agree = false;
                            break;
                        }
                    ++cell.cpa2_checked;
                    if (lifted_agree == base_agree)
                        ++cell.cpa2_ok;
                    else
                        cell.fail("CPA2 violated");
                }
            }
        return cell;
    };

    const auto cells = parallel_map<SweepCell>(jobs.size(), opts.workers, run_job);

    CpaSweepReport report;
    for (const auto& cell : cells) {
        report.fobj_checked += cell.fobj_checked;
        report.fobj_valid += cell.fobj_valid;
        report.gobj_checked += cell.gobj_checked;
        report.gobj_valid += cell.gobj_valid;
        report.phi_checked += cell.phi_checked;
        report.phi_valid += cell.phi_valid;
        report.cpa1_checked += cell.cpa1_checked;
        report.cpa1_ok += cell.cpa1_ok;
        report.cpa2_checked += cell.cpa2_checked;
        report.cpa2_ok += cell.cpa2_ok;
        if (report.first_failure.empty() && !cell.first_failure.empty())
            report.first_failure = cell.first_failure;
    }
    report.ok = report.first_failure.empty() && report.fobj_checked == report.fobj_valid &&
                report.gobj_checked == report.gobj_valid &&
                report.phi_checked == report.phi_valid &&
                report.cpa1_checked == report.cpa1_ok && report.cpa2_checked == report.cpa2_ok;
    return report;
}

} // namespace canram
