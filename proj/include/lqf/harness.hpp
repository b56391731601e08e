#pragma once

#include <functional>
#include <future>
#include <map>
#include <mutex>
#include <random>

#include <nlohmann/json.hpp>

#include "lqf/clifford.hpp"
#include "lqf/epsweil.hpp"
#include "lqf/torus.hpp"

namespace lqf {

inline constexpr const char* kReportSchema = "lqf.report/1";

inline const std::vector<std::string>& harness_types() {
    static const std::vector<std::string> t{"A1", "A2", "C2", "B2", "A3", "G2"};
    return t;
}

inline const std::vector<std::string>& all_suites() {
    static const std::vector<std::string> s{"algebraic-identities", "clifford-oracle", "jl", "combo", "froehlich",
                                            "lattice", "spinor", "torus-binary", "main-theorem-matrix"};
    return s;
}

// ------------------------------------------------------------ instances

struct InstanceSpec {
    std::string field = "Qp:5";
    std::string type = "A1";
    int f = 1, e = 1;
    long long c = 1;
    std::vector<int> phi0;               // per frame generator: index into Omega_0
    std::vector<std::vector<int>> w;     // per frame generator: word in simple reflections, 1-based
    std::optional<std::vector<std::vector<int>>> w_tilde;
    int psi_level = 0;
    int e_sign = 1;
    int precision = 24;
    bool intermediates = false;
};

inline nlohmann::json to_json(const InstanceSpec& s) {
    nlohmann::json j{{"field", s.field},
                     {"type", s.type},
                     {"frame", {{"f", s.f}, {"e", s.e}, {"c", s.c}}},
                     {"phi0", s.phi0},
                     {"w", s.w},
                     {"psi_level", s.psi_level},
                     {"e_sign", s.e_sign},
                     {"precision", s.precision},
                     {"intermediates", s.intermediates}};
    if (s.w_tilde) j["w_tilde"] = *s.w_tilde;
    return j;
}

inline InstanceSpec instance_from_json(const nlohmann::json& j) {
    InstanceSpec s;
    try {
        s.field = j.at("field").get<std::string>();
        s.type = j.at("type").get<std::string>();
        if (j.contains("frame")) {
            const auto& fr = j["frame"];
            s.f = fr.value("f", 1);
            s.e = fr.value("e", 1);
            s.c = fr.value("c", 1LL);
        }
        s.phi0 = j.value("phi0", std::vector<int>{});
        s.w = j.value("w", std::vector<std::vector<int>>{});
        if (j.contains("w_tilde")) s.w_tilde = j["w_tilde"].get<std::vector<std::vector<int>>>();
        s.psi_level = j.value("psi_level", 0);
        s.e_sign = j.value("e_sign", 1);
        s.precision = j.value("precision", 24);
        s.intermediates = j.value("intermediates", false);
    } catch (const nlohmann::json::exception& ex) {
        fail(ErrorCode::ParseError, std::string("instance: ") + ex.what());
    }
    if (s.e_sign != 1 && s.e_sign != -1) fail(ErrorCode::ParseError, "e_sign must be +1 or -1");
    if (s.precision < 8) fail(ErrorCode::ParseError, "precision must be at least 8");
    return s;
}

/// Root datum, Vinberg algebra and Omega for a type, built once per process.
struct TypeData {
    std::shared_ptr<const RootDatum> R;
    std::shared_ptr<const VinbergAlgebra> L;
    OmegaGroup Om;
};

inline const TypeData& type_data(const std::string& type, bool corrupt = false) {
    static std::mutex mu;
    static std::map<std::pair<std::string, bool>, std::unique_ptr<TypeData>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{type, corrupt}];
    if (!slot) {
        ChevalleyOptions opt;
        opt.corrupt = corrupt;
        auto R = std::make_shared<const RootDatum>(build_root_datum(type, opt));
        if (!R->has_weyl()) fail(ErrorCode::UnsupportedType, type + " is outside the harness types");
        auto L = std::make_shared<const VinbergAlgebra>(vinberg_algebra(*R));
        slot = std::make_unique<TypeData>(TypeData{R, L, omega_group(R)});
    }
    return *slot;
}

/// Homomorphism sigma -> Omega from generator images; InvalidArgument when the images are incompatible.
inline std::vector<int> instance_hom(const GaloisFrame& fr, const TypeData& T, const std::vector<int>& phi0,
                                     const std::vector<std::vector<int>>& words) {
    size_t ng = fr.gens.size();
    if (phi0.size() > ng || words.size() > ng)
        fail(ErrorCode::InvalidArgument, "frame " + fr.name() + " has " + std::to_string(ng) + " generators");
    std::vector<int> imgs;
    for (size_t k = 0; k < ng; ++k) {
        int o = k < phi0.size() ? phi0[k] : 0;
        if (o < 0 || o >= T.Om.no) fail(ErrorCode::InvalidArgument, "phi0 index out of range");
        std::vector<int> word;
        if (k < words.size())
            for (int i : words[k]) {
                if (i < 1 || i > T.R->rank) fail(ErrorCode::InvalidArgument, "simple reflection index out of range");
                word.push_back(i - 1);
            }
        imgs.push_back(T.Om.make(T.R->weyl_of_word(word), o));
    }
    auto h = fr.extend(imgs, [&](int a, int b) { return T.Om.mul(a, b); }, 0);
    if (!h) fail(ErrorCode::InvalidArgument, "generator images do not define a homomorphism on " + fr.name());
    return *h;
}

/// Generator images of a homomorphism, in instance-file form.
inline void set_generators(InstanceSpec& s, const GaloisFrame& fr, const TypeData& T, const std::vector<int>& h) {
    s.phi0.clear();
    s.w.clear();
    for (int g : fr.gens) {
        s.phi0.push_back(T.Om.omega_part(h[g]));
        std::vector<int> word;
        for (int i : T.R->words[T.Om.weyl_part(h[g])]) word.push_back(i + 1);
        s.w.push_back(word);
    }
}

// ------------------------------------------------------------ the two pipelines

inline int negative_squares(const QuadSpace& Q) {
    int n = 0;
    for (auto c : diagonalize(Q).coeffs) n += c.bits & 1;
    return n;
}

/// Over R the resolved cocycle may twist G to a non-quasi-split inner form; picks the first 2-torsion
/// correction whose derived block has the signature of the quasi-split form.
inline TorusDatum resolve_quasi_split(const GaloisFrame& fr, const TypeData& T, const std::vector<int>& phi0,
                                      const std::vector<int>& w, const TorusDatum& td0, bool& adjusted) {
    adjusted = false;
    auto S = cocycle_system(fr, *T.L, phi0, w);
    if (!S.system.consistent())
        fail(ErrorCode::Obstructed, "Tits defect is not a coboundary for this phi over " + fr.name());
    auto first = make_torus_datum(fr, T.L, phi0, w, S.unpack(S.system.particular()));
    if (fr.field().kind != FieldKind::Real) return first;
    int target = negative_squares(descend_quadspace(td0, Block::Derived));
    if (negative_squares(descend_quadspace(first, Block::Derived)) == target) return first;
    for (auto& t : cocycle_corrections(S, 256)) {
        auto td = make_torus_datum(fr, T.L, phi0, w, t);
        if (negative_squares(descend_quadspace(td, Block::Derived)) == target) {
            adjusted = true;
            return td;
        }
    }
    fail(ErrorCode::Obstructed, "no 2-torsion correction gives the quasi-split form over R");
}

struct LhsResult {
    Br2sElem wall;
    FourthRoot gamma;
    std::complex<double> oracle;
    std::string oracle_kind;
    bool oracle_agrees = false;
};

/// e(G) gamma(Q_V, psi): reads only the descended root block of the cocycle.
inline LhsResult lhs_pipeline(const TorusDatum& td, const AdditiveCharacter& psi) {
    QuadSpace QV = descend_quadspace(td, Block::V);
    LhsResult r;
    r.wall = wall(QV);
    r.gamma = weil_index(QV, psi);
    if (psi.field.kind == FieldKind::Real) {
        r.oracle_kind = "signature";
        r.oracle = real_weil_signature_phase(QV, psi.level);
    } else {
        r.oracle_kind = "gauss";
        r.oracle = weil_gauss_oracle(QV, psi).phase;
    }
    r.oracle_agrees = std::abs(r.oracle - r.gamma.value()) < kSnapTolerance;
    return r;
}

/// SW-bar of X_*(T)_C - X_*(T0)_C: reads only the torus block and the Weyl data.
inline Br2sElem rhs_class(const TorusDatum& td, const TorusDatum& td0) {
    if (g2_char_three(td)) return br2s_sub(td.field(), g2_pullback(td), g2_pullback(td0));
    return sw_virtual(td, td0);
}

// ------------------------------------------------------------ intermediate identities

namespace detail {

inline SquareClass eps2_ratio_class(const TorusDatum& td, const TorusDatum& tdt) {
    const RootDatum& R = td.R();
    std::vector<int> bits;
    for (int s = 0; s < td.frame.order(); ++s) bits.push_back(R.eps2(R.weyl_mul(tdt.w[s], R.weyl_inv(td.w[s]))) < 0);
    return character_class(td.frame, bits);
}

inline std::optional<Br2sElem> rep_sw(const TorusDatum& td, Block b) {
    if (b == Block::T) return sw_bar_rep(td.frame, td.torus);
    auto RF = reduced_forms(vinberg_triple(*td.L));
    std::vector<IMat> mats;
    for (auto& M : td.torus) mats.push_back(b == Block::TPrime ? RF.on_prime(M) : RF.on_second(M));
    return sw_bar_rep(td.frame, mats, td.R().ell);
}

inline Br2sElem wall_or_zero(const TorusDatum& td, Block b, const std::vector<int>& slots) {
    if (slots.empty()) return {};
    return wall(descend_quadspace(td, b));
}

} // namespace detail

/// Named identity checks for T against T~ (same frame and phi0).
inline nlohmann::json intermediates(const TorusDatum& td, const TorusDatum& tdt) {
    const GroundField& F = td.field();
    const RootDatum& R = td.R();
    const VinbergAlgebra& L = *td.L;
    nlohmann::json out = nlohmann::json::object();
    auto hwV = hw_rel(descend_quadspace(td, Block::V), descend_quadspace(tdt, Block::V));
    out["SWgoal"] = hwV == rhs_class(tdt, td);

    if (ell_is_zero(R, F)) {
        auto hp = hw_rel(descend_quadspace(td, Block::TPrime), descend_quadspace(tdt, Block::TPrime));
        auto hs = hw_rel(descend_quadspace(td, Block::TSecond), descend_quadspace(tdt, Block::TSecond));
        out["ell0_sum"] = br2s_add(F, br2s_add(F, hp, hs), hwV) == Br2sElem{};
        for (auto [name, b, h] : {std::tuple{"ell0_tprime", Block::TPrime, hp}, std::tuple{"ell0_tsecond", Block::TSecond, hs}}) {
            auto a = detail::rep_sw(td, b), at = detail::rep_sw(tdt, b);
            if (a && at) out[name] = h == br2s_sub(F, *a, *at);
        }
        out["ell0_total"] = sw_bar(td) == g2_pullback(td);
        return out;
    }

    SquareClass chi = detail::eps2_ratio_class(td, tdt);
    int xl = symbol(F, chi, felem(F, R.ell));
    auto swb = sw_bar(td), swbt = sw_bar(tdt);
    Br2sElem item1 = br2s_sub(F, swb, swbt);
    item1.x ^= xl;
    auto hwT = hw_rel(descend_quadspace(td, Block::T), descend_quadspace(tdt, Block::T));
    out["item1"] = hwT == item1;

    FieldElem ell = felem(F, R.ell);
    auto VS = descend_quadspace(td, Block::VSecond), VSt = descend_quadspace(tdt, Block::VSecond);
    auto hwS = hw_rel(VS, VSt);
    auto hwlS = hw_rel(scale(ell, VS), scale(ell, VSt));
    Br2sElem item2 = hwS;
    item2.x ^= xl;
    out["item2"] = hwlS == item2;
    out["item2_chi"] = disc(diagonalize(VSt)) == disc(diagonalize(VS)) * chi;

    auto rep = detail::rep_sw(td, Block::T);
    if (rep) out["item3"] = *rep == swb;

    Br2sElem parts = br2s_add(F, wall(descend_quadspace(td, Block::T)), wall(scale(ell, VS)));
    parts = br2s_add(F, parts, detail::wall_or_zero(td, Block::VPrime, R.ell > 1 ? L.long_slots() : std::vector<int>{}));
    out["TVV"] = wall(descend_quadspace(td, Block::G)) == parts;
    Br2sElem rel = br2s_add(F, hwT, hwlS);
    if (R.ell > 1 && !L.long_slots().empty())
        rel = br2s_add(F, rel, hw_rel(descend_quadspace(td, Block::VPrime), descend_quadspace(tdt, Block::VPrime)));
    out["TVV_relative"] = rel == Br2sElem{};
    if (R.family == 'G') out["g2_dihedral"] = swb == g2_pullback(td);
    return out;
}

// ------------------------------------------------------------ verification

/// Everything about an instance that does not depend on psi.
struct InstanceRun {
    InstanceSpec spec;
    GroundField F;
    std::string frame_name;
    std::vector<int> hom;
    std::optional<TorusDatum> td, td0;
    Br2sElem rhs;
    nlohmann::json inter;
    bool quasi_split_adjusted = false;
    int precision_used = 0;
    bool retried = false;
};

struct RunOptions {
    bool corrupt_chevalley = false;
    int hilbert_flip_a = -1, hilbert_flip_b = -1;
    bool force_intermediates = false;
};

inline GroundField harness_field(const std::string& desc, int prec, const RunOptions& opt) {
    GroundField F = GroundField::parse(desc, prec);
    F.hilbert_flip_a = opt.hilbert_flip_a;
    F.hilbert_flip_b = opt.hilbert_flip_b;
    return F;
}

inline InstanceRun run_at(const InstanceSpec& spec, int prec, const RunOptions& opt) {
    InstanceRun run;
    run.spec = spec;
    run.precision_used = prec;
    run.F = harness_field(spec.field, prec, opt);
    const TypeData& T = type_data(spec.type, opt.corrupt_chevalley);
    auto fr = (spec.f == 1 && spec.e == 1) ? trivial_frame(run.F) : make_frame(run.F, spec.f, spec.e, spec.c);
    run.frame_name = fr.name();
    run.hom = instance_hom(fr, T, spec.phi0, spec.w);
    auto [phi0, w] = split_hom(T.Om, run.hom);
    run.td0 = resolve_cocycle(fr, T.L, phi0, std::vector<int>(fr.order(), 0));
    run.td = resolve_quasi_split(fr, T, phi0, w, *run.td0, run.quasi_split_adjusted);
    run.rhs = rhs_class(*run.td, *run.td0);
    if (spec.intermediates || opt.force_intermediates) {
        const TorusDatum* tilde = &*run.td0;
        std::optional<TorusDatum> tdt;
        if (spec.w_tilde) {
            auto ht = instance_hom(fr, T, spec.phi0, *spec.w_tilde);
            auto [phit, wt] = split_hom(T.Om, ht);
            if (phit != phi0) fail(ErrorCode::InvalidArgument, "w_tilde must share phi0");
            bool adj = false;
            tdt = resolve_quasi_split(fr, T, phit, wt, *run.td0, adj);
            tilde = &*tdt;
        }
        run.inter = intermediates(*run.td, *tilde);
    }
    return run;
}

/// Runs at the requested precision, retrying once at double precision on PrecisionLoss.
inline InstanceRun run_instance(const InstanceSpec& spec, const RunOptions& opt = {}) {
    try {
        return run_at(spec, spec.precision, opt);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::PrecisionLoss) throw;
    }
    auto run = run_at(spec, 2 * spec.precision, opt);
    run.retried = true;
    return run;
}

struct LevelResult {
    FourthRoot lhs, rhs;
    LhsResult detail;
    bool pass = false;
};

inline LevelResult evaluate_level(const InstanceRun& run, int level) {
    AdditiveCharacter psi{run.F, level};
    LevelResult r;
    r.detail = lhs_pipeline(*run.td, psi);
    r.lhs = run.spec.e_sign < 0 ? FourthRoot::minus_one() * r.detail.gamma : r.detail.gamma;
    r.rhs = eps_virtual(run.rhs, psi);
    r.pass = r.lhs == r.rhs;
    return r;
}

inline bool intermediates_pass(const nlohmann::json& inter) {
    for (auto& [k, v] : inter.items())
        if (!v.get<bool>()) return false;
    return true;
}

inline nlohmann::json assumptions_note(const InstanceRun& run) {
    nlohmann::json a = nlohmann::json::array();
    a.push_back("e_sign is an input: +1 means the quasi-split case");
    a.push_back("epsilon factors anchored by the Gauss sum at v(c) = a(chi) - level");
    if (run.F.characteristic() == 0 && run.F.kind != FieldKind::Real)
        a.push_back("SW of X_*(T)_C identified with the Froehlich class over F");
    if (g2_char_three(*run.td)) a.push_back("ell = char F: right side from the G2 dihedral formula");
    return a;
}

inline nlohmann::json report_json(const InstanceRun& run, const LevelResult& r, int level) {
    nlohmann::json j;
    j["schema"] = kReportSchema;
    InstanceSpec s = run.spec;
    s.psi_level = level;
    j["instance"] = to_json(s);
    j["frame"] = run.frame_name;
    j["hom"] = run.hom;
    j["lhs"] = r.lhs.to_string();
    j["rhs"] = r.rhs.to_string();
    j["lhs_wall"] = to_json(run.F, r.detail.wall);
    j["rhs_class"] = to_json(run.F, run.rhs);
    j["oracle"] = {{"kind", r.detail.oracle_kind},
                   {"phase", {r.detail.oracle.real(), r.detail.oracle.imag()}},
                   {"agrees", r.detail.oracle_agrees}};
    j["intermediates"] = run.inter;
    j["precision_used"] = run.precision_used;
    j["precision_retried"] = run.retried;
    j["quasi_split_correction"] = run.quasi_split_adjusted;
    j["assumptions"] = assumptions_note(run);
    bool ok = r.pass && r.detail.oracle_agrees && intermediates_pass(run.inter);
    j["verdict"] = ok ? "PASS" : "FAIL";
    return j;
}

inline nlohmann::json error_report(const InstanceSpec& spec, const Error& e) {
    return {{"schema", kReportSchema},
            {"instance", to_json(spec)},
            {"verdict", e.code() == ErrorCode::Obstructed ? "OBSTRUCTED" : "ERROR"},
            {"error", e.what()}};
}

/// Full report for one instance; FAIL reports always carry the intermediates.
inline nlohmann::json verify_main_theorem(const InstanceSpec& spec, const RunOptions& opt = {}) {
    try {
        auto run = run_instance(spec, opt);
        auto r = evaluate_level(run, spec.psi_level);
        if (!r.pass && !spec.intermediates) {
            RunOptions o = opt;
            o.force_intermediates = true;
            run = run_instance(spec, o);
        }
        return report_json(run, r, spec.psi_level);
    } catch (const Error& e) {
        return error_report(spec, e);
    }
}

inline int exit_code_for(const nlohmann::json& report) {
    std::string v = report.at("verdict");
    if (v == "PASS") return 0;
    if (v == "FAIL") return 1;
    return 2;
}

// ------------------------------------------------------------ suites

/// Counts checks and keeps the first few failure messages.
class Tally {
public:
    void check(bool ok, const std::function<std::string()>& what) {
        ++checks_;
        if (ok) return;
        ++failures_;
        if (messages_.size() < 8) messages_.push_back(what());
    }
    void error(const std::string& what) {
        ++errors_;
        if (messages_.size() < 8) messages_.push_back(what);
    }
    bool passed() const { return failures_ == 0 && errors_ == 0 && checks_ > 0; }
    long checks() const { return checks_; }

    nlohmann::json json() const {
        return {{"checks", checks_}, {"failures", failures_}, {"errors", errors_}, {"messages", messages_},
                {"pass", passed()}};
    }

private:
    long checks_ = 0, failures_ = 0, errors_ = 0;
    std::vector<std::string> messages_;
};

struct SuiteOptions {
    RunOptions run;
    unsigned seed = 20240601;
    int wall_forms = 200;
    int combo_forms = 100;
    std::vector<std::string> matrix_types = harness_types();
    std::vector<std::string> matrix_fields{"Qp:3", "Qp:5", "Qp:7", "Qp:2", "R", "Fq((t)):3", "Fq((t)):5"};
    std::vector<int> levels{-1, 0, 1};
    int max_order = 6;
    int precision = 24;
    bool precision_doubling = true;
    bool parallel = true;
};

namespace suites {

inline GroundField field(const std::string& desc, const SuiteOptions& o, int prec = 48) {
    return harness_field(desc, prec, o.run);
}

inline FieldElem random_unit_times_pi(const GroundField& F, std::mt19937& rng) {
    std::uniform_int_distribution<int> val(-3, 3);
    std::uniform_int_distribution<int> big(1, 100000);
    switch (F.kind) {
    case FieldKind::Real:
    case FieldKind::Complex: {
        int n = big(rng) - 50000;
        return felem(F, Rat(n == 0 ? 1 : n, big(rng)));
    }
    case FieldKind::Padic: {
        long long u;
        do u = big(rng); while (u % F.p == 0);
        return felem(F, (big(rng) % 2) ? u : -u) * FieldElem::pi(F).pow(val(rng));
    }
    case FieldKind::Laurent: {
        std::vector<int> c(6);
        for (auto& d : c) d = big(rng) % F.p;
        if (c[0] == 0) c[0] = 1;
        return FieldElem::laurent_poly(F, c) * FieldElem::pi(F).pow(val(rng));
    }
    }
    return felem(F, 1);
}

inline QuadSpace random_diag(const GroundField& F, size_t n, std::mt19937& rng) {
    FVec a;
    for (size_t i = 0; i < n; ++i) a.push_back(random_unit_times_pi(F, rng));
    return QuadSpace::diagonal(F, a);
}

/// Random nondegenerate symmetric integral Gram matrix; even diagonal when `even`.
inline QuadSpace random_gram(const GroundField& F, size_t n, std::mt19937& rng, bool even, int bound) {
    std::uniform_int_distribution<int> d(-bound, bound);
    for (;;) {
        QMat g(n, QVec(n));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i; j < n; ++j) g[i][j] = g[j][i] = Rat(i == j && even ? 2 * d(rng) : d(rng));
        auto Q = QuadSpace::from_rational(F, g);
        if (!fdet(Q.gram).is_zero()) return Q;
    }
}

inline std::vector<DiagForm> all_diag(const GroundField& F, size_t n) {
    auto cs = all_classes(F);
    std::vector<DiagForm> out{DiagForm{}};
    for (size_t i = 0; i < n; ++i) {
        std::vector<DiagForm> next;
        for (auto& D : out)
            for (auto c : cs) {
                auto E = D;
                E.coeffs.push_back(c);
                next.push_back(E);
            }
        out = std::move(next);
    }
    return out;
}

inline QuadSpace quaternion_norm_form(const GroundField& F, SquareClass d, SquareClass a) {
    return dsum(norm_form(F, d), scale(-class_rep(F, a), norm_form(F, d)));
}

inline std::string br(const GroundField& F, const Br2sElem& x) { return br2s_str(F, x); }

inline nlohmann::json algebraic_identities(const SuiteOptions& o) {
    Tally axioms, walls;
    for (auto desc : {"R", "C", "Qp:2", "Qp:3", "Qp:5", "Fq((t)):3"}) {
        auto F = field(desc, o);
        std::vector<Br2sElem> els;
        for (auto c : all_classes(F))
            for (int x : {0, 1})
                if (F.kind != FieldKind::Complex || x == 0) els.push_back({c, x});
        for (auto& a : els) {
            axioms.check(br2s_add(F, br2s_zero(), a) == a, [&] { return std::string(desc) + " identity"; });
            axioms.check(br2s_sub(F, a, a) == br2s_zero(), [&] { return std::string(desc) + " inverse"; });
            for (auto& b : els) {
                axioms.check(br2s_add(F, a, b) == br2s_add(F, b, a), [&] { return std::string(desc) + " commutativity"; });
                for (auto& c : els)
                    axioms.check(br2s_add(F, br2s_add(F, a, b), c) == br2s_add(F, a, br2s_add(F, b, c)),
                                 [&] { return std::string(desc) + " associativity"; });
            }
        }
    }
    std::mt19937 rng(o.seed);
    std::uniform_int_distribution<int> half(1, 3);
    for (auto desc : {"R", "Qp:3", "Qp:5", "Qp:7", "Qp:2", "Fq((t)):3"}) {
        auto F = field(desc, o);
        for (int t = 0; t < o.wall_forms; ++t) {
            auto Q1 = random_diag(F, 2 * half(rng), rng);
            auto Q2 = t % 2 ? random_gram(F, 2 * half(rng), rng, false, 30) : random_diag(F, 2 * half(rng), rng);
            auto tag = [&, t](const char* what) { return [=] { return std::string(desc) + " form " + std::to_string(t) + ": " + what; }; };
            walls.check(wall(dsum(Q1, Q2)) == br2s_add(F, wall(Q1), wall(Q2)), tag("additivity"));
            walls.check(wall(dsum(Q1, scale(felem(F, -1), Q1))) == br2s_zero(), tag("Witt relation"));
            auto a = random_unit_times_pi(F, rng);
            auto w = wall(Q1);
            walls.check(br2s_sub(F, wall(scale(a, Q1)), w) == Br2sElem{SquareClass{}, symbol(F, w.chi, a)}, tag("scaling"));
            auto Q3 = random_diag(F, Q1.dim(), rng), Q1b = random_diag(F, Q1.dim(), rng);
            walls.check(hw_rel(Q3, Q1) == br2s_add(F, hw_rel(Q3, Q1b), hw_rel(Q1b, Q1)), tag("HW cocycle"));
            walls.check(hw_rel(Q3, Q1) == br2s_sub(F, wall(Q1), wall(Q3)), tag("HW versus Wall"));
            walls.check(wall(Q2) == wall_of_diag(F, diagonalize(Q2)), tag("Wall of the diagonalization"));
        }
    }
    nlohmann::json j{{"br2s-axioms", axioms.json()}, {"wall-random", walls.json()}};
    j["pass"] = axioms.passed() && walls.passed();
    return j;
}

inline nlohmann::json clifford_oracle(const SuiteOptions& o) {
    Tally diag, quat;
    for (auto desc : {"R", "Qp:2", "Qp:3", "Qp:5", "Fq((t)):3"}) {
        auto F = field(desc, o);
        for (size_t n : {2u, 4u})
            for (auto& D : all_diag(F, n))
                diag.check(wall_via_clifford(F, D) == wall_of_diag(F, D), [&] {
                    std::string s = std::string(desc) + " diag";
                    for (auto c : D.coeffs) s += " " + class_name(F, c);
                    return s;
                });
        for (auto d : all_classes(F))
            for (auto a : all_classes(F)) {
                auto QD = quaternion_norm_form(F, d, a);
                auto D = diagonalize(QD);
                auto tag = [&] { return std::string(desc) + " D(" + class_name(F, d) + "," + class_name(F, a) + ")"; };
                quat.check(disc(D).is_one(), tag);
                quat.check(wall(QD) == Br2sElem{SquareClass{}, cup(F, d, a)}, tag);
                quat.check(wall_via_clifford(F, D) == wall(QD), tag);
            }
    }
    nlohmann::json j{{"rank-2-and-4", diag.json()}, {"quaternion", quat.json()}};
    j["pass"] = diag.passed() && quat.passed();
    return j;
}

inline std::vector<std::string> nonarch_fields() {
    return {"Qp:3", "Qp:5", "Qp:7", "Qp:2", "Fq((t)):3", "Fq((t)):5"};
}

inline nlohmann::json jl(const SuiteOptions& o, std::vector<std::string> fields = nonarch_fields()) {
    Tally t, quat;
    double worst = 0;
    nlohmann::json counts = nlohmann::json::object();
    for (auto& desc : fields) {
        auto F = field(desc, o);
        int n = 0;
        for (int level : o.levels)
            for (auto E : quadratic_etale_algebras(F)) {
                if (E.split()) continue;
                AdditiveCharacter psi{F, level};
                auto g = weil_gauss_oracle(norm_form(F, E.a), psi).phase;
                auto e = eps_quadratic_raw(E.a, psi);
                worst = std::max(worst, std::abs(g - e));
                auto tag = [&] { return desc + " E=" + class_name(F, E.a) + " level " + std::to_string(level); };
                t.check(std::abs(g - e) < kSnapTolerance, tag);
                t.check(snap_fourth_root(g) == eps_quadratic(E.a, psi), tag);
                ++n;
            }
        counts[desc] = n;
        for (auto d : all_classes(F))
            for (auto a : all_classes(F)) {
                if (hilbert(F, d, a) == 1) continue;
                auto QD = quaternion_norm_form(F, d, a);
                for (int level : o.levels) {
                    AdditiveCharacter psi{F, level};
                    auto tag = [&] { return desc + " quaternion (" + class_name(F, d) + "," + class_name(F, a) + ")"; };
                    quat.check(weil_index(QD, psi) == FourthRoot::minus_one(), tag);
                    quat.check(std::abs(weil_gauss_oracle(QD, psi).phase + 1.0) < kSnapTolerance, tag);
                }
            }
    }
    auto R = field("R", o);
    auto H = QuadSpace::from_classes(R, {class_of(R, 1), {}, {}, {}});
    quat.check(weil_index(QuadSpace::from_classes(R, {{}, {}, {}, {}}), {R, 0}) == FourthRoot::minus_one(),
               [] { return std::string("Hamilton norm form over R"); });
    quat.check(weil_index(dsum(H, H), {R, 0}) == FourthRoot::one(), [] { return std::string("Q_D + Q_D over R"); });
    nlohmann::json j{{"etale", t.json()}, {"quaternion", quat.json()}, {"checks_per_field", counts}, {"max_deviation", worst}};
    j["pass"] = t.passed() && quat.passed();
    return j;
}

inline nlohmann::json combo(const SuiteOptions& o) {
    Tally t;
    std::mt19937 rng(o.seed + 1);
    double worst = 0;
    for (auto& desc : nonarch_fields()) {
        auto F = field(desc, o);
        for (int k = 0; k < o.combo_forms; ++k) {
            size_t n = 2 * (1 + k % 3);
            auto Q = random_gram(F, n, rng, true, 40);
            AdditiveCharacter psi{F, o.levels[k % o.levels.size()]};
            try {
                auto g = weil_gauss_oracle(Q, psi).phase;
                auto w = wall(Q);
                FourthRoot predicted = eps_quadratic(w.chi, psi) * (w.x ? FourthRoot::minus_one() : FourthRoot::one());
                worst = std::max(worst, std::abs(g - predicted.value()));
                auto tag = [&] { return desc + " form " + std::to_string(k) + " dim " + std::to_string(n); };
                t.check(std::abs(g - predicted.value()) < kSnapTolerance, tag);
                t.check(snap_fourth_root(g) == weil_index(Q, psi), tag);
            } catch (const Error& e) {
                t.error(desc + " form " + std::to_string(k) + ": " + e.what());
            }
        }
    }
    auto j = t.json();
    j["max_deviation"] = worst;
    return j;
}

/// Faithful homomorphisms of a frame group into Omega, up to Omega-conjugacy.
inline std::vector<std::vector<int>> faithful_homs(const GaloisFrame& fr, const TypeData& T) {
    return up_to_conjugacy(T.Om, omega_homomorphisms(fr, T.Om, true));
}

inline nlohmann::json froehlich(const SuiteOptions& o) {
    Tally t;
    long obstructed = 0, no_rep = 0;
    for (auto desc : {"Qp:3", "Qp:5", "R"}) {
        auto F = field(desc, o, o.precision);
        for (auto& type : harness_types()) {
            const TypeData& T = type_data(type, o.run.corrupt_chevalley);
            for (auto& fr : enumerate_frames(F, 6)) {
                int n = fr.order();
                if (n == 4 || n == 5) continue;
                for (auto& h : faithful_homs(fr, T)) {
                    auto [phi0, w] = split_hom(T.Om, h);
                    std::string key = std::string(desc) + " " + type + " " + fr.name();
                    try {
                        auto td = resolve_cocycle(fr, T.L, phi0, w);
                        auto rep = sw_bar_rep(fr, td.torus);
                        if (!rep) {
                            ++no_rep;
                            continue;
                        }
                        auto lhs = hw_rel(descend_quadspace(td, Block::T), split_quadspace(td, Block::T));
                        Br2sElem rhs = *rep;
                        rhs.x ^= xi(fr, spinor_character(td));
                        t.check(lhs == rhs, [&] { return key + ": HW " + br(F, lhs) + " vs " + br(F, rhs); });
                        t.check(rep->chi == det_character(td), [&] { return key + ": det character"; });
                    } catch (const Error& e) {
                        if (e.code() == ErrorCode::Obstructed) ++obstructed;
                        else t.error(key + ": " + e.what());
                    }
                }
            }
        }
    }
    auto j = t.json();
    j["obstructed"] = obstructed;
    j["without_rep_oracle"] = no_rep;
    return j;
}

inline IVec unit(int n, int k) {
    IVec e(n, 0);
    e[k] = 1;
    return e;
}

inline nlohmann::json lattice(const SuiteOptions& o) {
    Tally t;
    for (auto& type : harness_types()) {
        const TypeData& T = type_data(type, o.run.corrupt_chevalley);
        const RootDatum& R = *T.R;
        const VinbergAlgebra& L = *T.L;
        int n = R.rank;
        auto tag = [&](const char* what) { return [=] { return type + ": " + what; }; };
        QMat B = b1_gram(R);
        // Q1 normalization, W-invariance and the root/coroot relations
        for (int a = 0; a < R.nroots(); ++a) {
            auto c = to_qvec(R.coroots[a]);
            t.check(q1(R, c) == Rat(R.ell_coroot(a)), tag("Q1(alpha^vee) = ell(alpha^vee)"));
            t.check(R.ell_coroot(a) * R.ell_root(a) == R.ell, tag("ell(alpha) ell(alpha^vee) = ell"));
            for (int j = 0; j < n; ++j)
                t.check(b1(R, c, to_qvec(unit(n, j))) == Rat(R.ell_coroot(a) * R.pairing(a, unit(n, j))),
                        tag("B1(alpha^vee, y) = ell(alpha^vee) <alpha, y>"));
            t.check(Rat(R.ell) * q1(R, root_as_coweight(R, a)) == Rat(R.ell_root(a)), tag("(ell Q1)(alpha) = ell(alpha)"));
        }
        for (int i = 0; i < n; ++i) {
            auto S = to_qmat(R.reflection_matrix(R.simple(i)));
            t.check(mat_mul(mat_mul(transpose(S), B), S) == B, tag("Q1 is W-invariant"));
        }
        // integrality on the four lattices
        t.check(is_integral(B) && even_diagonal(to_imat(B)), tag("Q1 even on coroots"));
        auto W = fundamental_coweights(R);
        QMat roots;
        for (int i = 0; i < n; ++i) roots.push_back(root_as_coweight(R, R.simple(i)));
        auto Wt = fundamental_weights_as_coweights(R);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                t.check(mp::denominator(b1(R, to_qvec(unit(n, i)), W[j])) == 1, tag("B1(coroots, coweights) integral"));
                Rat v = Rat(R.ell) * b1(R, roots[i], roots[j]);
                t.check(mp::denominator(v) == 1 && (i != j || mp::denominator(Rat(v / 2)) == 1), tag("ell Q1 even on roots"));
                t.check(mp::denominator(Rat(R.ell) * b1(R, Wt[i], roots[j])) == 1, tag("ell B1(weights, roots) integral"));
            }
        // the Vinberg torus form
        try {
            auto C = perp_lattice(vinberg_triple(L));
            t.check(C.lambda_in_perp && C.ell_perp_in_lambda, tag("Q_T and ell Q_T integral"));
            if (R.ell == 1) t.check(C.index == 1, tag("unimodular when simply laced"));
        } catch (const Error& e) {
            t.error(type + ": " + e.what());
        }
        for (int a = 0; a < R.nroots(); ++a) {
            IVec h = L.torus_coords(to_qvec(R.coroots[a]), QVec(L.r, Rat(0)));
            IVec Gh = mat_vec(L.gram_T, h);
            t.check(std::inner_product(h.begin(), h.end(), Gh.begin(), 0LL) == 2 * R.ell_coroot(a),
                    tag("Q_T(alpha^vee, 0) = ell(alpha^vee)"));
        }
        for (int j = 0; j < L.r; ++j) t.check(L.gram_T[L.r + j][L.r + j] == 0, tag("diagonal vectors isotropic"));
        for (int w = 0; w < R.weyl_order(); ++w)
            for (int oo = 0; oo < static_cast<int>(R.omega0.size()); ++oo)
                t.check(preserves_form(L.torus_action(w, 0, oo), L.gram_T), tag("Omega preserves Q_T"));
        // Q_G = Q_T + Q_V' + ell Q_V'' on Lie(G)
        auto ts = L.torus_slots();
        std::vector<bool> is_t(L.dim, false);
        for (int s : ts) is_t[s] = true;
        bool blocks = true;
        for (int x = 0; x < L.dim; ++x)
            for (int y = 0; y < L.dim; ++y) {
                if (is_t[x] != is_t[y]) blocks = blocks && L.gram_G[x][y] == 0;
            }
        for (size_t i = 0; i < ts.size(); ++i)
            for (size_t j = 0; j < ts.size(); ++j) blocks = blocks && L.gram_G[ts[i]][ts[j]] == L.gram_T[i][j];
        for (int a = 0; a < R.nroots(); ++a) {
            int x = L.slot(a), y = L.slot(R.negate(a));
            long long scale_ = R.is_long[a] && R.ell > 1 ? 1 : R.ell;
            blocks = blocks && L.gram_G[x][y] == scale_ * L.gram_V[x][y];
        }
        t.check(blocks, tag("Q_G = Q_T + Q_V' + ell Q_V''"));
        t.check(form_is_invariant(L, L.gram_G), tag("Q_G invariant"));
        // reductions mod ell
        if (R.ell > 1) {
            auto RF = reduced_forms(vinberg_triple(L));
            t.check(RF.qprime.dim() + RF.qsecond.dim() == static_cast<size_t>(L.nt), tag("dim t' + dim t'' = rank"));
            t.check(RF.qprime.nondegenerate() && RF.qsecond.nondegenerate(), tag("Q', Q'' nondegenerate over F_ell"));
            t.check(quotient_well_defined(RF.tprime, RF.gram) && quotient_well_defined(RF.tsecond, RF.ell_dual),
                    tag("quotients well defined"));
        }
    }
    auto G2 = type_data("G2", o.run.corrupt_chevalley).R;
    auto C = perp_lattice(coroot_triple(*G2));
    t.check(C.index == 3, [] { return std::string("G2 single-factor index 3"); });
    auto RF = reduced_forms(coroot_triple(*G2));
    t.check(RF.qprime.nondegenerate() && RF.qsecond.nondegenerate() && RF.qprime.dim() == 1 && RF.qsecond.dim() == 1,
            [] { return std::string("G2 single-factor Q', Q''"); });
    return t.json();
}

inline nlohmann::json spinor(const SuiteOptions& o) {
    Tally inv, zero, square;
    for (auto type : {"A1", "A2", "C2", "G2"}) {
        const TypeData& T = type_data(type, o.run.corrupt_chevalley);
        const RootDatum& R = *T.R;
        const VinbergAlgebra& L = *T.L;
        for (auto desc : {"Qp:3", "Qp:5", "Qp:7"}) {
            auto F = field(desc, o);
            QuadSpace QT = QuadSpace::from_rational(F, to_qmat(L.gram_T));
            for (int w = 0; w < R.weyl_order(); ++w) {
                FMat vecs;
                for (int i : R.words[w]) {
                    FVec v(L.nt, FieldElem::make_zero(F));
                    v[i] = felem(F, 1);
                    vecs.push_back(v);
                }
                inv.check(spinor_norm_oracle(QT, vecs) == spinor_character(R, F, w),
                          [&] { return std::string(type) + " " + desc + " w=" + std::to_string(w); });
            }
        }
        // deg o t = eps'' on Tits lifts: the determinant of n(w) on V''
        auto sl = L.short_slots();
        for (int w = 0; w < R.weyl_order() && !sl.empty(); ++w) {
            IMat n = L.tits_ad_w(w);
            QMat block(sl.size(), QVec(sl.size()));
            for (size_t i = 0; i < sl.size(); ++i)
                for (size_t j = 0; j < sl.size(); ++j) block[i][j] = Rat(n[sl[i]][sl[j]]);
            square.check(q_det(block) == R.eps2(w), [&] { return std::string(type) + " deg n(w) on V'' w=" + std::to_string(w); });
        }
    }
    // ell = char F: Weyl elements have trivial spinor norm on t' and t''
    const TypeData& G = type_data("G2", o.run.corrupt_chevalley);
    auto F3 = field("Fq((t)):3", o);
    auto RF = reduced_forms(vinberg_triple(*G.L));
    for (auto [name, f, second] : {std::tuple{"t'", &RF.qprime, false}, std::tuple{"t''", &RF.qsecond, true}}) {
        IMat gram = f->gram;
        for (size_t i = 0; i < f->dim(); ++i) gram[i][i] = modl::md(2 * f->q[i], 3);
        for (int w = 0; w < G.R->weyl_order(); ++w) {
            IMat M = G.L->torus_action(w);
            IMat g = second ? RF.on_second(M) : RF.on_prime(M);
            zero.check(spinor_norm(F3, gram, g).is_one(), [&, name = name] { return std::string("G2 ") + name + " w=" + std::to_string(w); });
        }
    }
    for (int a = 0; a < G.R->nroots(); ++a) {
        IMat M = G.L->torus_action(G.R->reflection(a));
        auto id2 = identity_mat<long long>(2);
        bool ok = G.R->is_long[a] ? RF.on_second(M) == id2 && RF.on_prime(M) != id2
                                  : RF.on_prime(M) == id2 && RF.on_second(M) != id2;
        zero.check(ok, [&] { return "G2 reflection " + std::to_string(a) + " acts on one side only"; });
    }
    nlohmann::json j{{"invertible", inv.json()}, {"char-ell", zero.json()}, {"deg-square", square.json()}};
    j["pass"] = inv.passed() && zero.passed() && square.passed();
    return j;
}

inline nlohmann::json torus_binary(const SuiteOptions& o) {
    Tally t;
    for (auto desc : {"Qp:3", "Qp:5", "R", "Fq((t)):5"}) {
        auto F = field(desc, o, o.precision);
        for (auto E : quadratic_etale_algebras(F))
            for (auto a : all_classes(F)) {
                auto r = hw_torus_binary_check(F, E, class_rep(F, a));
                t.check(r.pass, [&] {
                    return std::string(desc) + " E=" + class_name(F, E.a) + " a=" + class_name(F, a) + " hw " + br(F, r.hw);
                });
            }
    }
    return t.json();
}

struct MatrixCell {
    nlohmann::json rows = nlohmann::json::array();
    long pass = 0, fail = 0, obstructed = 0, errors = 0;
};

inline MatrixCell matrix_cell(const std::string& type, const std::string& desc, const SuiteOptions& o) {
    MatrixCell cell;
    const TypeData& T = type_data(type, o.run.corrupt_chevalley);
    auto F = harness_field(desc, o.precision, o.run);
    for (auto& fr : enumerate_frames(F, o.max_order)) {
        for (auto& h : faithful_homs(fr, T)) {
            InstanceSpec s;
            s.field = desc;
            s.type = type;
            s.f = fr.K.f;
            s.e = fr.K.e;
            s.c = fr.c;
            s.precision = o.precision;
            s.intermediates = true;
            set_generators(s, fr, T, h);
            nlohmann::json row{{"instance", to_json(s)}, {"frame", fr.name()}};
            try {
                auto run = run_instance(s, o.run);
                std::optional<InstanceRun> doubled;
                if (o.precision_doubling && F.nonarch()) doubled = run_at(s, 2 * o.precision, o.run);
                bool ok = intermediates_pass(run.inter);
                std::set<std::string> verdicts;
                nlohmann::json levels = nlohmann::json::object();
                for (int level : o.levels) {
                    auto r = evaluate_level(run, level);
                    bool lv = r.pass && r.detail.oracle_agrees;
                    if (doubled) {
                        auto r2 = evaluate_level(*doubled, level);
                        lv = lv && r2.lhs == r.lhs && r2.rhs == r.rhs;
                    }
                    verdicts.insert(lv ? "PASS" : "FAIL");
                    levels[std::to_string(level)] = {{"lhs", r.lhs.to_string()}, {"rhs", r.rhs.to_string()}, {"pass", lv}};
                    ok = ok && lv;
                }
                row["levels"] = levels;
                row["intermediates"] = run.inter;
                row["quasi_split_correction"] = run.quasi_split_adjusted;
                row["trivial_torus"] = std::all_of(run.td->w.begin(), run.td->w.end(), [](int x) { return x == 0; });
                row["ell_correction"] = run.F.characteristic() == 0 && run.td->R().ell > 1 &&
                                        symbol(run.F, detail::eps2_ratio_class(*run.td, *run.td0), felem(run.F, run.td->R().ell)) == 1;
                row["verdict"] = ok ? "PASS" : "FAIL";
                (ok ? cell.pass : cell.fail)++;
            } catch (const Error& e) {
                bool obs = e.code() == ErrorCode::Obstructed;
                row["verdict"] = obs ? "OBSTRUCTED" : "ERROR";
                row["error"] = e.what();
                (obs ? cell.obstructed : cell.errors)++;
            }
            cell.rows.push_back(row);
        }
    }
    return cell;
}

inline nlohmann::json main_theorem_matrix(const SuiteOptions& o) {
    std::vector<std::pair<std::string, std::string>> jobs;
    for (auto& type : o.matrix_types)
        for (auto& desc : o.matrix_fields) {
            // ell = char F only arises for G2 in characteristic 3
            if (desc == "Fq((t)):3" && type != "G2") continue;
            jobs.emplace_back(type, desc);
        }
    for (auto& [type, desc] : jobs) type_data(type, o.run.corrupt_chevalley);
    std::vector<MatrixCell> cells(jobs.size());
    if (o.parallel) {
        std::vector<std::future<MatrixCell>> fut;
        for (auto& [type, desc] : jobs)
            fut.push_back(std::async(std::launch::async, [&, type = type, desc = desc] { return matrix_cell(type, desc, o); }));
        for (size_t i = 0; i < jobs.size(); ++i) cells[i] = fut[i].get();
    } else {
        for (size_t i = 0; i < jobs.size(); ++i) cells[i] = matrix_cell(jobs[i].first, jobs[i].second, o);
    }
    nlohmann::json j;
    long pass = 0, failc = 0, obs = 0, err = 0;
    nlohmann::json summary = nlohmann::json::object(), rows = nlohmann::json::array();
    for (size_t i = 0; i < jobs.size(); ++i) {
        auto& c = cells[i];
        summary[jobs[i].first + " " + jobs[i].second] = {
            {"pass", c.pass}, {"fail", c.fail}, {"obstructed", c.obstructed}, {"errors", c.errors}};
        pass += c.pass, failc += c.fail, obs += c.obstructed, err += c.errors;
        for (auto& r : c.rows) rows.push_back(r);
    }
    j["summary"] = summary;
    j["instances"] = rows;
    j["counts"] = {{"pass", pass}, {"fail", failc}, {"obstructed", obs}, {"errors", err}};
    j["pass"] = failc == 0 && err == 0 && pass > 0;
    return j;
}

} // namespace suites

inline SuiteOptions suite_options_from_json(const nlohmann::json& j) {
    SuiteOptions o;
    try {
        o.seed = j.value("seed", o.seed);
        o.wall_forms = j.value("wall_forms", o.wall_forms);
        o.combo_forms = j.value("combo_forms", o.combo_forms);
        o.precision = j.value("precision", o.precision);
        o.parallel = j.value("parallel", o.parallel);
        if (j.contains("psi_levels")) o.levels = j["psi_levels"].get<std::vector<int>>();
        if (j.contains("matrix")) {
            const auto& m = j["matrix"];
            o.matrix_types = m.value("types", o.matrix_types);
            o.matrix_fields = m.value("fields", o.matrix_fields);
            o.max_order = m.value("max_order", o.max_order);
            o.precision_doubling = m.value("precision_doubling", o.precision_doubling);
        }
        if (j.contains("negative_control")) {
            const auto& n = j["negative_control"];
            o.run.corrupt_chevalley = n.value("chevalley_corrupt", false);
            if (n.contains("hilbert_flip")) {
                auto ab = n["hilbert_flip"].get<std::vector<int>>();
                if (ab.size() != 2) fail(ErrorCode::ParseError, "hilbert_flip takes two class codes");
                o.run.hilbert_flip_a = ab[0];
                o.run.hilbert_flip_b = ab[1];
            }
        }
    } catch (const nlohmann::json::exception& ex) {
        fail(ErrorCode::ParseError, std::string("suite config: ") + ex.what());
    }
    if (o.levels.empty()) fail(ErrorCode::ParseError, "psi_levels must not be empty");
    return o;
}

inline nlohmann::json run_one_suite(const std::string& name, const SuiteOptions& o) {
    nlohmann::json r;
    try {
        if (name == "algebraic-identities") r = suites::algebraic_identities(o);
        else if (name == "clifford-oracle") r = suites::clifford_oracle(o);
        else if (name == "jl") r = suites::jl(o);
        else if (name == "combo") r = suites::combo(o);
        else if (name == "froehlich") r = suites::froehlich(o);
        else if (name == "lattice") r = suites::lattice(o);
        else if (name == "spinor") r = suites::spinor(o);
        else if (name == "torus-binary") r = suites::torus_binary(o);
        else if (name == "main-theorem-matrix") r = suites::main_theorem_matrix(o);
        else fail(ErrorCode::ParseError, "unknown suite " + name);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ParseError) throw;
        r = {{"pass", false}, {"error", e.what()}};
    }
    return r;
}

/// Runs the suites listed in the config; reports are keyed and ordered by suite name.
inline nlohmann::json run_suite(const nlohmann::json& config) {
    if (!config.is_object()) fail(ErrorCode::ParseError, "suite config must be an object");
    std::vector<std::string> names;
    try {
        names = config.value("suites", std::vector<std::string>{});
    } catch (const nlohmann::json::exception& ex) {
        fail(ErrorCode::ParseError, std::string("suites: ") + ex.what());
    }
    for (auto& n : names)
        if (std::find(all_suites().begin(), all_suites().end(), n) == all_suites().end())
            fail(ErrorCode::ParseError, "unknown suite " + n);
    auto o = suite_options_from_json(config);
    nlohmann::json out{{"schema", kReportSchema}, {"suites", nlohmann::json::object()}};
    bool ok = true;
    for (auto& n : names) {
        auto r = run_one_suite(n, o);
        ok = ok && r.value("pass", false);
        out["suites"][n] = r;
    }
    out["pass"] = ok;
    return out;
}

} // namespace lqf
