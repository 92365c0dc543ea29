#include "ym/series.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace ym {

namespace {

int clamp_order(long v) {
    if (v >= PuiseuxSeries::kInfiniteOrder) return PuiseuxSeries::kInfiniteOrder;
    if (v <= -PuiseuxSeries::kInfiniteOrder) return -PuiseuxSeries::kInfiniteOrder;
    return static_cast<int>(v);
}

const Poly& zero_poly() {
    static const Poly z;
    return z;
}

} // namespace

const Poly& PuiseuxSeries::coeff(int r) const {
    if (r > valid_to)
        throw std::out_of_range("PuiseuxSeries::coeff: order " + std::to_string(r) +
                                " beyond validity " + std::to_string(valid_to));
    if (coeffs.empty() || r < lead || r >= lead + static_cast<int>(coeffs.size()))
        return zero_poly();
    return coeffs[static_cast<size_t>(r - lead)];
}

PuiseuxSeries PuiseuxSeries::operator+(const PuiseuxSeries& o) const {
    PuiseuxSeries out;
    out.valid_to = std::min(valid_to, o.valid_to);
    if (coeffs.empty() && o.coeffs.empty()) return out;
    const int we_a = lead + static_cast<int>(coeffs.size()) - 1;
    const int we_b = o.lead + static_cast<int>(o.coeffs.size()) - 1;
    int lo, hi;
    if (coeffs.empty()) { lo = o.lead; hi = we_b; }
    else if (o.coeffs.empty()) { lo = lead; hi = we_a; }
    else { lo = std::min(lead, o.lead); hi = std::max(we_a, we_b); }
    hi = std::min(hi, out.valid_to);
    if (hi < lo) return out;
    out.lead = lo;
    out.coeffs.resize(static_cast<size_t>(hi - lo + 1));
    for (int r = lo; r <= hi; ++r) {
        Poly v;
        if (!coeffs.empty() && r >= lead && r <= we_a) v += coeffs[static_cast<size_t>(r - lead)];
        if (!o.coeffs.empty() && r >= o.lead && r <= we_b) v += o.coeffs[static_cast<size_t>(r - o.lead)];
        out.coeffs[static_cast<size_t>(r - lo)] = std::move(v);
    }
    return out;
}

PuiseuxSeries PuiseuxSeries::operator-(const PuiseuxSeries& o) const {
    return *this + o.scaled(Poly(-1));
}

PuiseuxSeries PuiseuxSeries::operator*(const PuiseuxSeries& o) const {
    PuiseuxSeries out;
    out.valid_to = clamp_order(std::min<long>(static_cast<long>(valid_to) + o.lead,
                                              static_cast<long>(o.valid_to) + lead));
    out.lead = clamp_order(static_cast<long>(lead) + o.lead);
    if (coeffs.empty() || o.coeffs.empty()) return out;
    const int we = std::min<long>(static_cast<long>(lead) + coeffs.size() - 1 + o.lead + o.coeffs.size() - 1,
                                  out.valid_to);
    if (we < out.lead) return out;
    out.coeffs.resize(static_cast<size_t>(we - out.lead + 1));
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i].is_zero()) continue;
        for (size_t j = 0; j < o.coeffs.size(); ++j) {
            if (o.coeffs[j].is_zero()) continue;
            long r = static_cast<long>(lead) + static_cast<long>(i) + o.lead + static_cast<long>(j);
            if (r > we) break;
            out.coeffs[static_cast<size_t>(r - out.lead)] += coeffs[i] * o.coeffs[j];
        }
    }
    return out;
}

PuiseuxSeries PuiseuxSeries::scaled(const Poly& p) const {
    PuiseuxSeries out = *this;
    for (auto& c : out.coeffs) c = c * p;
    return out;
}

PuiseuxSeries PuiseuxSeries::pow(int n) const {
    if (n < 0) throw std::invalid_argument("PuiseuxSeries::pow: negative exponent");
    PuiseuxSeries result = of_poly(Poly(1));
    PuiseuxSeries base = *this;
    while (n > 0) {
        if (n & 1) result = result * base;
        if (n >>= 1) base = base * base;
    }
    return result;
}

PuiseuxSeries PuiseuxSeries::dt() const {
    // d/dt = (1/(2 tau)) d/dtau shifts orders down by two.
    PuiseuxSeries out;
    out.lead = clamp_order(static_cast<long>(lead) - 2);
    out.valid_to = valid_to >= kInfiniteOrder ? kInfiniteOrder : valid_to - 2;
    out.coeffs.resize(coeffs.size());
    for (size_t i = 0; i < coeffs.size(); ++i) {
        const int r = lead + static_cast<int>(i);
        out.coeffs[i] = coeffs[i].scaled(Scalar(Rational(r, 2)));
    }
    return out;
}

PuiseuxSeries PuiseuxSeries::truncated(int new_valid_to) const {
    PuiseuxSeries out = *this;
    if (new_valid_to < out.valid_to) {
        out.valid_to = new_valid_to;
        if (!out.coeffs.empty()) {
            const int keep = new_valid_to - out.lead + 1;
            if (keep <= 0)
                out.coeffs.clear();
            else if (keep < static_cast<int>(out.coeffs.size()))
                out.coeffs.resize(static_cast<size_t>(keep));
        }
    }
    return out;
}

PuiseuxSeries compose(const Poly& f, const std::map<VarId, PuiseuxSeries>& image) {
    std::map<std::pair<VarId, int>, PuiseuxSeries> powers;
    std::function<const PuiseuxSeries&(VarId, int)> power = [&](VarId v, int k) -> const PuiseuxSeries& {
        auto key = std::make_pair(v, k);
        auto it = powers.find(key);
        if (it != powers.end()) return it->second;
        PuiseuxSeries p = (k == 1) ? image.at(v) : power(v, k - 1) * image.at(v);
        return powers.emplace(key, std::move(p)).first->second;
    };

    PuiseuxSeries acc;
    for (auto& [m, coeff] : f.terms()) {
        Poly scalar_part(coeff);
        PuiseuxSeries term = PuiseuxSeries::of_poly(Poly(1));
        bool any_series = false;
        for (auto& [v, k] : m.e) {
            if (image.count(v)) {
                term = term * power(v, k);
                any_series = true;
            } else {
                scalar_part *= Poly::var(v, k);
            }
        }
        if (!any_series) term = PuiseuxSeries::of_poly(Poly(1));
        acc = acc + term.scaled(scalar_part);
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Leading-order solver
// ---------------------------------------------------------------------------

namespace {

struct LeadState {
    std::map<VarId, Poly> solved;
    std::vector<Poly> eqs;
    std::set<VarId> kept_nonzero;
    std::set<VarId> unsolved;
};

Poly apply_map(const Poly& p, const std::map<VarId, Poly>& sub) {
    if (sub.empty()) return p;
    bool touches = false;
    for (VarId v : p.vars())
        if (sub.count(v)) { touches = true; break; }
    return touches ? p.substitute(sub) : p;
}

void lead_solve_symbol(LeadState& st, VarId x, const Poly& val) {
    for (auto& [y, v] : st.solved) v = v.substitute(x, val);
    for (auto& e : st.eqs) e = e.substitute(x, val);
    st.solved[x] = val;
    st.unsolved.erase(x);
}

// Minimum exponent of x across all terms of E (0 if some term lacks x).
int min_exponent(const Poly& E, VarId x) {
    int m = 1 << 20;
    for (auto& [mono, c] : E.terms()) m = std::min(m, mono.deg_in(x));
    return E.is_zero() ? 0 : m;
}

} // namespace

std::vector<LeadingFamily> find_leading_balances(const SystemDef& sys) {
    const int n = sys.dim();

    std::vector<VarId> syms;
    std::map<VarId, PuiseuxSeries> image;
    for (int i = 0; i < n; ++i) {
        VarId s = VarTable::intern("_c" + std::to_string(i));
        syms.push_back(s);
        PuiseuxSeries z;
        z.lead = -sys.lead_tau[static_cast<size_t>(i)];
        z.coeffs = {Poly::var(s)};
        z.valid_to = PuiseuxSeries::kInfiniteOrder;
        image.emplace(sys.state[static_cast<size_t>(i)], z);
    }

    // Pure leading-order equations: the most singular residual coefficient
    // of each component (later orders mix in higher-stage corrections).
    LeadState start;
    start.unsolved.insert(syms.begin(), syms.end());
    for (int i = 0; i < n; ++i) {
        PuiseuxSeries R = image.at(sys.state[static_cast<size_t>(i)]).dt() -
                          compose(sys.field[static_cast<size_t>(i)], image);
        Poly E = R.coeff(R.lead);
        if (!E.is_zero()) start.eqs.push_back(E);
    }

    // The declared leading free coefficients must survive the solve.
    std::set<VarId> protected_syms;
    for (auto& slot : sys.slots)
        if (slot.tau_order == 0) protected_syms.insert(syms[static_cast<size_t>(slot.component)]);

    std::vector<LeadState> done;
    std::vector<LeadState> work{start};
    while (!work.empty()) {
        LeadState st = std::move(work.back());
        work.pop_back();
        bool dead = false;
        for (;;) {
            // Drop satisfied equations; fail on unsatisfiable ones.
            std::vector<Poly> keep;
            for (auto& e : st.eqs) {
                if (e.is_zero()) continue;
                bool has_unknown = false;
                for (VarId v : e.vars())
                    if (st.unsolved.count(v)) { has_unknown = true; break; }
                if (!has_unknown) { dead = true; break; }
                keep.push_back(e);
            }
            if (dead) break;
            st.eqs = std::move(keep);
            if (st.eqs.empty()) break;

            bool progress = false;

            // Affine equations with a constant pivot, keeping the declared
            // free coefficients unsolved whenever an alternative exists.
            for (size_t idx = 0; idx < st.eqs.size() && !progress; ++idx) {
                std::map<VarId, Poly> coeff;
                Poly rest;
                try {
                    st.eqs[idx].affine_decompose(st.unsolved, coeff, rest);
                } catch (const std::domain_error&) {
                    continue;
                }
                VarId pivot = -1;
                bool pivot_protected = true;
                for (auto& [x, L] : coeff) {
                    if (!L.is_constant()) continue;
                    const bool prot = protected_syms.count(x) > 0;
                    if (pivot == -1 || (pivot_protected && !prot)) {
                        pivot = x;
                        pivot_protected = prot;
                    }
                }
                if (pivot == -1) continue;
                Poly val = -rest;
                for (auto& [y, Ly] : coeff)
                    if (y != pivot) val -= Ly * Poly::var(y);
                val = val.scaled(coeff[pivot].as_constant().inverse());
                st.eqs.erase(st.eqs.begin() + static_cast<long>(idx));
                lead_solve_symbol(st, pivot, val);
                progress = true;
            }
            if (progress) continue;

            // Factor a principal-branch variable out of an equation.
            for (size_t idx = 0; idx < st.eqs.size() && !progress; ++idx) {
                for (VarId x : st.unsolved) {
                    int m = min_exponent(st.eqs[idx], x);
                    if (m >= 1) {
                        st.eqs[idx] = st.eqs[idx].divexact(Poly::var(x, m));
                        st.kept_nonzero.insert(x);
                        progress = true;
                        break;
                    }
                }
            }
            if (progress) continue;

            // Univariate pure quadratic a x^2 + c with a field square root.
            for (size_t idx = 0; idx < st.eqs.size() && !progress; ++idx) {
                const Poly& E = st.eqs[idx];
                std::set<VarId> evars;
                for (VarId v : E.vars())
                    if (st.unsolved.count(v)) evars.insert(v);
                if (evars.size() != 1) continue;
                VarId x = *evars.begin();
                auto uni = E.as_univariate(x);
                if (uni.size() != 2 || !uni.count(0) || !uni.count(2)) continue;
                if (!uni[0].is_constant() || !uni[2].is_constant()) continue;
                Scalar target = -(uni[0].as_constant() / uni[2].as_constant());
                auto root = target.sqrt_simple();
                if (!root)
                    throw std::runtime_error("find_leading_balances: leading quadratic has no root in Q(i,sqrt2)");
                st.eqs.erase(st.eqs.begin() + static_cast<long>(idx));
                LeadState other = st;
                lead_solve_symbol(st, x, Poly(*root));
                lead_solve_symbol(other, x, Poly(-*root));
                work.push_back(std::move(other));
                progress = true;
            }
            if (!progress)
                throw std::runtime_error("find_leading_balances: solver stuck on leading system");
        }
        if (!dead && st.eqs.empty()) done.push_back(std::move(st));
    }

    if (done.empty()) throw std::runtime_error("find_leading_balances: no nontrivial balance found");

    std::vector<LeadingFamily> families;
    for (auto& st : done) {
        LeadingFamily fam;

        // Rename the declared free leading coefficients to their slot names;
        // anything else left unsolved is pinned at a later order.
        std::map<VarId, Poly> rename;
        for (auto& slot : sys.slots) {
            if (slot.tau_order != 0) continue;
            VarId expect = syms[static_cast<size_t>(slot.component)];
            if (!st.unsolved.count(expect))
                throw std::runtime_error("find_leading_balances: declared free coefficient was forced");
            rename.emplace(expect, Poly::var(slot.param));
            fam.free_names.push_back(slot.param);
        }

        for (int i = 0; i < n; ++i) {
            Poly li = Poly::var(syms[static_cast<size_t>(i)]);
            li = apply_map(li, st.solved);
            li = apply_map(li, rename);
            fam.lead.push_back(li);
        }
        for (VarId v : st.unsolved)
            if (!rename.count(v)) fam.deferred.push_back(v);

        // Branch tag from the second component, whose leading coefficient is
        // eps*sqrt2/4 in both model systems; other systems stay untagged.
        if (n >= 2 && fam.lead[1].is_constant() && !fam.lead[1].is_zero()) {
            Scalar eps = fam.lead[1].as_constant() * Scalar(4) / Scalar::sqrt2();
            if (eps == Scalar::i() || eps == -Scalar::i()) fam.eps = eps;
        }
        families.push_back(std::move(fam));
    }

    std::sort(families.begin(), families.end(), [](const LeadingFamily& a, const LeadingFamily& b) {
        return a.eps.c1() > b.eps.c1(); // +i first
    });
    return families;
}

// ---------------------------------------------------------------------------
// Order-by-order extension
// ---------------------------------------------------------------------------

namespace {

class ExtensionSolver {
public:
    ExtensionSolver(const SystemDef& sys, const LeadingFamily& fam, int order)
        : sys_(sys), fam_(fam), order_(order) {}

    Balance run();
    const std::vector<SystemDef::Slot>& inserted() const { return inserted_; }

private:
    struct Equation {
        int comp;
        int order;
        Poly p;
    };

    Poly resolve(const Poly& p) const {
        Poly out = p;
        for (;;) {
            bool touches = false;
            for (VarId v : out.vars())
                if (solved_.count(v)) { touches = true; break; }
            if (!touches) return out;
            out = out.substitute(solved_);
        }
    }

    bool is_slot_position(VarId x) const {
        auto it = syminfo_.find(x);
        if (it == syminfo_.end()) return false;
        for (auto& slot : sys_.slots)
            if (slot.tau_order == it->second.second && slot.component == it->second.first)
                return true;
        return false;
    }

    void solve_symbol(VarId x, const Poly& val) {
        for (auto& [y, v] : solved_) v = v.substitute(x, val);
        for (auto& e : pool_) e.p = e.p.substitute(x, val);
        solved_[x] = val;
        unsolved_.erase(x);
    }

    void sweep() {
        bool progress = true;
        while (progress) {
            progress = false;
            for (size_t idx = 0; idx < pool_.size(); ++idx) {
                Equation& eq = pool_[idx];
                if (eq.p.is_zero()) {
                    pool_.erase(pool_.begin() + static_cast<long>(idx));
                    --idx;
                    progress = true;
                    continue;
                }
                std::map<VarId, Poly> coeff;
                Poly rest;
                try {
                    eq.p.affine_decompose(unsolved_, coeff, rest);
                } catch (const std::domain_error&) {
                    continue; // deferred until substitutions linearize it
                }
                if (coeff.empty()) {
                    std::ostringstream os;
                    os << "resonance incompatibility (logarithm required): component "
                       << eq.comp + 1 << ", tau order " << eq.order << ", residual " << eq.p.pretty();
                    throw std::runtime_error(os.str());
                }
                // Pivot choice: constant coefficient, preferring symbols that
                // are not declared free-parameter slots; stable order.
                VarId pivot = -1;
                bool pivot_is_slot = true;
                for (auto& [x, L] : coeff) {
                    if (!L.is_constant()) continue;
                    bool slot = is_slot_position(x);
                    if (pivot == -1 || (pivot_is_slot && !slot)) {
                        pivot = x;
                        pivot_is_slot = slot;
                    }
                }
                if (pivot == -1) continue; // no constant pivot yet
                Poly val = -rest;
                for (auto& [y, Ly] : coeff)
                    if (y != pivot) val -= Ly * Poly::var(y);
                val = val.scaled(coeff[pivot].as_constant().inverse());
                pool_.erase(pool_.begin() + static_cast<long>(idx));
                --idx;
                solve_symbol(pivot, val);
                progress = true;
            }
        }
    }

    void flush_through(int stage) {
        for (int k = flushed_ + 1; k <= stage; ++k) {
            std::vector<VarId> leftovers;
            for (VarId x : unsolved_) {
                auto it = syminfo_.find(x);
                if (it != syminfo_.end() && it->second.second == k) leftovers.push_back(x);
            }
            std::vector<SystemDef::Slot> slots_k;
            for (auto& slot : sys_.slots)
                if (slot.tau_order == k) slots_k.push_back(slot);

            if (leftovers.empty() && slots_k.empty()) { flushed_ = k; continue; }
            if (leftovers.size() != slots_k.size()) {
                std::ostringstream os;
                os << "balance resonance structure mismatch at tau order " << k << ": "
                   << leftovers.size() << " free directions, " << slots_k.size() << " declared";
                throw std::runtime_error(os.str());
            }
            // Normalize: each declared parameter equals the raw series
            // coefficient at its slot.
            for (auto& slot : slots_k) {
                Poly raw = resolve(coeff_symbol(slot.component, k));
                pool_.push_back({slot.component, k, raw - Poly::var(slot.param)});
                inserted_.push_back(slot);
            }
            sweep();
            for (VarId x : leftovers)
                if (unsolved_.count(x))
                    throw std::runtime_error("balance flush failed to normalize free direction at tau order " +
                                             std::to_string(k));
            flushed_ = k;
        }
    }

    Poly coeff_symbol(int comp, int stage) const {
        return table_[static_cast<size_t>(comp)][static_cast<size_t>(stage)];
    }

    const SystemDef& sys_;
    const LeadingFamily& fam_;
    int order_;
    int flushed_ = 0;
    std::vector<std::vector<Poly>> table_;
    std::map<VarId, std::pair<int, int>> syminfo_; // symbol -> (component, stage)
    std::set<VarId> unsolved_;
    std::map<VarId, Poly> solved_;
    std::vector<Equation> pool_;
    std::vector<SystemDef::Slot> inserted_;
};

Balance ExtensionSolver::run() {
    const int n = sys_.dim();
    const int margin = 10;
    const int nsym = order_ + margin;

    table_.assign(static_cast<size_t>(n), {});
    for (int i = 0; i < n; ++i) {
        auto& col = table_[static_cast<size_t>(i)];
        col.resize(static_cast<size_t>(nsym) + 1);
        col[0] = fam_.lead[static_cast<size_t>(i)];
        for (int k = 1; k <= nsym; ++k) {
            VarId x = VarTable::intern("_x" + std::to_string(i) + "_" + std::to_string(k));
            col[static_cast<size_t>(k)] = Poly::var(x);
            syminfo_[x] = {i, k};
            unsolved_.insert(x);
        }
        // Leading coefficients that the leading system left unpinned.
        for (VarId v : fam_.deferred)
            if (col[0].degree_in(v) > 0) {
                syminfo_[v] = {i, 0};
                unsolved_.insert(v);
            }
    }

    // Record the leading free-parameter slots first.
    for (auto& slot : sys_.slots)
        if (slot.tau_order == 0) inserted_.push_back(slot);

    std::map<VarId, PuiseuxSeries> image;
    for (int i = 0; i < n; ++i) {
        PuiseuxSeries z;
        z.lead = -sys_.lead_tau[static_cast<size_t>(i)];
        z.coeffs = table_[static_cast<size_t>(i)];
        z.valid_to = z.lead + nsym;
        image.emplace(sys_.state[static_cast<size_t>(i)], z);
    }

    std::vector<PuiseuxSeries> residual;
    int r_lo = 0, r_hi = order_ + 1;
    for (int i = 0; i < n; ++i) {
        PuiseuxSeries R = image.at(sys_.state[static_cast<size_t>(i)]).dt() -
                          compose(sys_.field[static_cast<size_t>(i)], image);
        r_lo = std::min(r_lo, R.lead);
        if (R.valid_to < r_hi)
            throw std::logic_error("extend_balance: symbol margin too small for requested order");
        residual.push_back(std::move(R));
    }

    for (int r = r_lo; r <= r_hi; ++r) {
        for (int i = 0; i < n; ++i) {
            Poly E = resolve(residual[static_cast<size_t>(i)].coeff(r));
            if (!E.is_zero()) pool_.push_back({i, r, E});
        }
        sweep();
        flush_through(std::min(r - 1, order_));
    }
    flush_through(order_);

    // Materialize the solved coefficient table.
    Balance b;
    b.sys = &sys_;
    b.eps = fam_.eps;
    b.order = order_;
    b.inserted = inserted_;
    std::sort(b.inserted.begin(), b.inserted.end(),
              [](const SystemDef::Slot& x, const SystemDef::Slot& y) {
                  if (x.tau_order != y.tau_order) return x.tau_order < y.tau_order;
                  return x.component < y.component;
              });
    for (int i = 0; i < n; ++i) {
        PuiseuxSeries z;
        z.lead = -sys_.lead_tau[static_cast<size_t>(i)];
        z.valid_to = z.lead + order_;
        z.coeffs.resize(static_cast<size_t>(order_) + 1);
        for (int k = 0; k <= order_; ++k) {
            Poly v = resolve(table_[static_cast<size_t>(i)][static_cast<size_t>(k)]);
            for (VarId x : v.vars())
                if (syminfo_.count(x))
                    throw std::logic_error("extend_balance: coefficient (" + std::to_string(i) + "," +
                                           std::to_string(k) + ") still contains unsolved symbols");
            z.coeffs[static_cast<size_t>(k)] = std::move(v);
        }
        b.coords.push_back(std::move(z));
    }
    return b;
}

} // namespace

Balance extend_balance(const SystemDef& sys, const LeadingFamily& family, int order) {
    if (order < 0) throw std::invalid_argument("extend_balance: negative order");
    int max_slot = 0;
    for (auto& s : sys.slots) max_slot = std::max(max_slot, s.tau_order);
    if (order < max_slot)
        throw std::invalid_argument("extend_balance: order below the highest resonance (" +
                                    std::to_string(max_slot) + ")");
    ExtensionSolver solver(sys, family, order);
    return solver.run();
}

Balance compute_balance(const SystemDef& sys, const Scalar& eps, int order) {
    for (auto& fam : find_leading_balances(sys))
        if (fam.eps == eps) return extend_balance(sys, fam, order);
    throw std::invalid_argument("compute_balance: no family with the requested branch");
}

ResidualReport residual_check_series(const SystemDef& sys, const std::vector<PuiseuxSeries>& coords, int N) {
    if (static_cast<int>(coords.size()) != sys.dim())
        throw std::invalid_argument("residual_check: dimension mismatch");
    std::map<VarId, PuiseuxSeries> image;
    for (int i = 0; i < sys.dim(); ++i) image.emplace(sys.state[static_cast<size_t>(i)], coords[static_cast<size_t>(i)]);

    ResidualReport rep;
    rep.checked_to = PuiseuxSeries::kInfiniteOrder;
    std::vector<PuiseuxSeries> residual;
    for (int i = 0; i < sys.dim(); ++i) {
        PuiseuxSeries R = image.at(sys.state[static_cast<size_t>(i)]).dt() -
                          compose(sys.field[static_cast<size_t>(i)], image);
        rep.checked_to = std::min(rep.checked_to, R.valid_to);
        residual.push_back(std::move(R));
    }
    if (rep.checked_to < N)
        throw std::invalid_argument("residual_check: series too short to verify through order " +
                                    std::to_string(N) + " (valid to " + std::to_string(rep.checked_to) + ")");
    rep.checked_to = N;
    int r_lo = residual[0].lead;
    for (auto& R : residual) r_lo = std::min(r_lo, R.lead);
    for (int r = r_lo; r <= N; ++r) {
        for (int i = 0; i < sys.dim(); ++i) {
            const Poly& E = residual[static_cast<size_t>(i)].coeff(r);
            if (!E.is_zero()) {
                rep.ok = false;
                rep.first_bad_order = r;
                rep.first_bad_component = i;
                rep.witness = E;
                return rep;
            }
        }
    }
    return rep;
}

ResidualReport residual_check(const Balance& b, int N) {
    return residual_check_series(*b.sys, b.coords, N);
}

PuiseuxSeries invariant_series(const Balance& b, const Poly& invariant) {
    std::map<VarId, PuiseuxSeries> image;
    for (int i = 0; i < b.sys->dim(); ++i)
        image.emplace(b.sys->state[static_cast<size_t>(i)], b.coords[static_cast<size_t>(i)]);
    return compose(invariant, image);
}

CurveRelation curve_from_balance(const Balance& b) {
    const SystemDef& sys = *b.sys;
    const auto& cs = sys.curve;

    std::vector<Poly> eqs;
    for (size_t j = 0; j < sys.invariants.size(); ++j) {
        PuiseuxSeries S = invariant_series(b, sys.invariants[j].second);
        const int hi = std::min(S.valid_to, S.lead + static_cast<int>(S.coeffs.size()) - 1);
        for (int r = S.lead; r <= hi; ++r) {
            if (r == 0) continue;
            if (!S.coeff(r).is_zero())
                throw std::runtime_error("curve_from_balance: invariant " + sys.invariants[j].first +
                                         " not constant on the balance (tau order " + std::to_string(r) +
                                         "): " + S.coeff(r).pretty());
        }
        eqs.push_back(S.coeff(0) - Poly::var(sys.value_names[j]));
    }

    for (const auto& pname : cs.eliminate) {
        const VarId p = VarTable::intern(pname);
        // Affine in p everywhere, with a preferred constant pivot.
        int pivot = -1;
        bool pivot_const = false;
        std::vector<std::pair<Poly, Poly>> parts; // (L, R): eq = L*p + R
        for (auto& e : eqs) {
            auto uni = e.as_univariate(p);
            if (!uni.empty() && uni.rbegin()->first > 1)
                throw std::runtime_error("curve_from_balance: elimination of " + pname + " is not linear");
            Poly L = uni.count(1) ? uni[1] : Poly();
            Poly R = uni.count(0) ? uni[0] : Poly();
            parts.emplace_back(L, R);
        }
        for (size_t i = 0; i < parts.size(); ++i) {
            if (parts[i].first.is_zero()) continue;
            const bool is_const = parts[i].first.is_constant();
            if (pivot == -1 || (is_const && !pivot_const)) {
                pivot = static_cast<int>(i);
                pivot_const = is_const;
            }
        }
        if (pivot == -1)
            throw std::runtime_error("curve_from_balance: parameter " + pname + " absent from the equations");
        const Poly Lp = parts[static_cast<size_t>(pivot)].first;
        const Poly Rp = parts[static_cast<size_t>(pivot)].second;
        std::vector<Poly> next;
        for (size_t i = 0; i < parts.size(); ++i) {
            if (static_cast<int>(i) == pivot) continue;
            next.push_back(Lp * parts[i].second - parts[i].first * Rp);
        }
        eqs = std::move(next);
    }

    if (eqs.size() != 1)
        throw std::logic_error("curve_from_balance: elimination left " + std::to_string(eqs.size()) +
                               " equations");

    const VarId fiber = VarTable::intern(cs.fiber);
    Poly lead2 = eqs[0].coefficient_of(fiber, 2);
    if (lead2.is_zero() || !lead2.is_constant())
        throw std::runtime_error("curve_from_balance: fiber-squared coefficient is not a nonzero constant");

    CurveRelation out;
    out.rel = eqs[0].scaled(cs.fiber_norm / lead2.as_constant());
    out.base = VarTable::intern(cs.base);
    out.fiber = fiber;
    out.eps = b.eps;
    out.id = cs.id;
    return out;
}

std::vector<Rational> kowalevski_exponents(const SystemDef& sys, const Scalar& eps) {
    int max_slot = 0;
    for (auto& s : sys.slots) max_slot = std::max(max_slot, s.tau_order);
    Balance b = compute_balance(sys, eps, max_slot + 2);
    std::vector<Rational> out{Rational(-1)};
    for (auto& slot : b.inserted) {
        Rational r(slot.tau_order, 2);
        r.canonicalize();
        out.push_back(r);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace ym
