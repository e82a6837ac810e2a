//! Brute-force verification harness.
//!
//! Every suite walks all applicable forms or strings up to its bound and
//! checks one identity between the library's maps. The harness keeps its own
//! machinery for everything that is not the quantity under test: reduced
//! forms are enumerated by factoring, the reduction operators are evaluated
//! by sign tests in machine integers, continuants come from a left-to-right
//! convergent recursion or an exact rational fold, and surd expansions are
//! recomputed either by sign-tested integer stepping or by rational interval
//! refinement.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::contfrac::{
    continuant, continuant_matrix, denjoy_surd, neg_cf_surd, neg_to_reg_stream, reg_cf_surd,
    reg_to_denjoy, CfKind, NatString, QuadraticSurd,
};
use crate::error::{domain, parse, Error, Result};
use crate::forms::Form;
use crate::maps::{beta_with, gamma_with, mu, sigma_with, tau, xi, zero_to_zero_one};
use crate::pell::{fundamental_solution, PellSign, PellSolution};
use crate::reduction::{r_g_in, r_z_in, Discriminant};
use crate::strings::{
    eta_minus, eta_plus, knead, pinch_both, rotate_bin, sb, sb_inv, t_g, t_z, BinString,
};

/// The registered verification suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Rotation,
    XiDiagramPlus,
    XiDiagramMinus,
    FormFromBeads,
    ReductionRelation,
    FirstCoefficient,
    Reversal,
    MuFiber,
    Primitivity,
    WeightParity,
    ZCaliber,
    Denjoy,
    Lgz,
    ContinuantIdentities,
    TzKnead,
}

impl Suite {
    pub const ALL: [Suite; 15] = [
        Suite::Rotation,
        Suite::XiDiagramPlus,
        Suite::XiDiagramMinus,
        Suite::FormFromBeads,
        Suite::ReductionRelation,
        Suite::FirstCoefficient,
        Suite::Reversal,
        Suite::MuFiber,
        Suite::Primitivity,
        Suite::WeightParity,
        Suite::ZCaliber,
        Suite::Denjoy,
        Suite::Lgz,
        Suite::ContinuantIdentities,
        Suite::TzKnead,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Suite::Rotation => "rotation",
            Suite::XiDiagramPlus => "xi_diagram_plus",
            Suite::XiDiagramMinus => "xi_diagram_minus",
            Suite::FormFromBeads => "formfrombeads",
            Suite::ReductionRelation => "reductionrelation",
            Suite::FirstCoefficient => "firstcoefficient",
            Suite::Reversal => "reversal",
            Suite::MuFiber => "mu_fiber",
            Suite::Primitivity => "primitivity",
            Suite::WeightParity => "weightparity",
            Suite::ZCaliber => "zcaliber",
            Suite::Denjoy => "denjoy",
            Suite::Lgz => "lgz",
            Suite::ContinuantIdentities => "continuant_identities",
            Suite::TzKnead => "tz_knead",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.id() == s)
            .ok_or_else(|| parse(format!("unknown suite {s:?}")))
    }
}

/// How far each suite searches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bounds {
    /// Largest discriminant visited by the form-based checks.
    pub delta_max: u64,
    /// Natural strings of length up to this, for the string sections.
    pub string_len_max: usize,
    /// Largest entry of those natural strings.
    pub string_entry_max: u64,
    /// Binary necklaces of length up to this, for the caliber count.
    pub necklace_len_max: usize,
    /// Random strings for the continuant and T_Z suites.
    pub random_samples: usize,
    /// Random reduced surds per kind for the cross-engine checks.
    pub surd_samples: usize,
    /// Terms compared per surd.
    pub surd_terms: usize,
    /// Random `(P, Q, Δ)` triples for the periodicity criterion.
    pub lgz_samples: usize,
    /// Brute-force window for Pell minimality.
    pub pell_window: u64,
    pub seed: u64,
}

impl Bounds {
    /// Default bounds with the given discriminant ceiling. A ceiling of 0 is
    /// the empty run: every suite checks nothing.
    pub fn from_delta_max(delta_max: u64) -> Self {
        let full = Bounds {
            delta_max,
            string_len_max: 8,
            string_entry_max: 6,
            necklace_len_max: 9,
            random_samples: 10_000,
            surd_samples: 100,
            surd_terms: 50,
            lgz_samples: 1_000,
            pell_window: 20_000,
            seed: 0x005e_ed0f_2a9e,
        };
        if delta_max == 0 {
            Bounds {
                string_len_max: 0,
                necklace_len_max: 0,
                random_samples: 0,
                surd_samples: 0,
                lgz_samples: 0,
                ..full
            }
        } else {
            full
        }
    }
}

fn big_as_string<S: Serializer>(v: &Option<BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_some(&v.to_string()),
        None => s.serialize_none(),
    }
}

/// One counterexample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    /// Discriminant of the form involved, when there is one.
    #[serde(serialize_with = "big_as_string")]
    pub delta: Option<BigInt>,
    pub input: String,
    pub expected: String,
    pub found: String,
    #[serde(skip)]
    key: Vec<BigInt>,
}

impl Failure {
    fn order(&self) -> (bool, Option<&BigInt>, &[BigInt], &str) {
        (
            self.delta.is_none(),
            self.delta.as_ref(),
            &self.key,
            &self.input,
        )
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(d) = &self.delta {
            write!(f, "Δ={d} ")?;
        }
        write!(
            f,
            "{}: expected {}, found {}",
            self.input, self.expected, self.found
        )
    }
}

/// At most this many counterexamples are kept, smallest first.
pub const MAX_REPORTED_FAILURES: usize = 25;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub theorem_id: String,
    /// Inclusive discriminant interval; empty when the first entry exceeds
    /// the second.
    pub delta_range: [u64; 2],
    pub cases_checked: u64,
    pub failures_total: u64,
    /// The smallest counterexamples: by discriminant, then by input.
    pub failures: Vec<Failure>,
    /// Observations recorded without being asserted.
    pub remarks: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [lo, hi] = self.delta_range;
        write!(
            f,
            "{} {}: {} cases, Δ in [{lo}, {hi}], {} failures",
            if self.passed() { "PASS" } else { "FAIL" },
            self.theorem_id,
            self.cases_checked,
            self.failures_total
        )?;
        if let Some(first) = self.failures.first() {
            write!(f, "; minimal counterexample {first}")?;
        }
        Ok(())
    }
}

/// Accumulates cases and counterexamples for one shard of a suite.
#[derive(Debug, Default)]
struct Tally {
    cases: u64,
    failures_total: u64,
    failures: Vec<Failure>,
    notes: BTreeMap<&'static str, u64>,
}

impl Tally {
    fn case(&mut self) {
        self.cases += 1;
    }

    fn note(&mut self, what: &'static str) {
        *self.notes.entry(what).or_default() += 1;
    }

    fn fail(
        &mut self,
        delta: Option<BigInt>,
        key: Vec<BigInt>,
        input: impl fmt::Display,
        expected: impl fmt::Display,
        found: impl fmt::Display,
    ) {
        self.record(delta, key, &input, &expected, &found);
    }

    fn record(
        &mut self,
        delta: Option<BigInt>,
        key: Vec<BigInt>,
        input: &dyn fmt::Display,
        expected: &dyn fmt::Display,
        found: &dyn fmt::Display,
    ) {
        self.failures_total += 1;
        self.failures.push(Failure {
            delta,
            input: input.to_string(),
            expected: expected.to_string(),
            found: found.to_string(),
            key,
        });
        if self.failures.len() >= 4 * MAX_REPORTED_FAILURES {
            self.trim();
        }
    }

    fn trim(&mut self) {
        self.failures.sort_by(|a, b| a.order().cmp(&b.order()));
        self.failures.truncate(MAX_REPORTED_FAILURES);
    }

    fn merge(&mut self, other: Tally) {
        self.cases += other.cases;
        self.failures_total += other.failures_total;
        self.failures.extend(other.failures);
        for (k, v) in other.notes {
            *self.notes.entry(k).or_default() += v;
        }
        if self.failures.len() >= 4 * MAX_REPORTED_FAILURES {
            self.trim();
        }
    }

    fn into_report(mut self, suite: Suite, b: &Bounds) -> VerificationReport {
        self.trim();
        VerificationReport {
            theorem_id: suite.id().to_string(),
            delta_range: [1, b.delta_max],
            cases_checked: self.cases,
            failures_total: self.failures_total,
            failures: self.failures,
            remarks: self
                .notes
                .into_iter()
                .map(|(k, v)| format!("{k}: {v}"))
                .collect(),
        }
    }
}

/// Runs one suite with default bounds up to `delta_max`.
pub fn verify(theorem_id: &str, delta_max: u64) -> Result<VerificationReport> {
    verify_with(theorem_id, &Bounds::from_delta_max(delta_max))
}

pub fn verify_with(theorem_id: &str, bounds: &Bounds) -> Result<VerificationReport> {
    Ok(verify_suite(theorem_id.parse()?, bounds))
}

pub fn verify_suite(suite: Suite, b: &Bounds) -> VerificationReport {
    let tally = match suite {
        Suite::Rotation => rotation(b),
        Suite::XiDiagramPlus => xi_diagram(b, true),
        Suite::XiDiagramMinus => xi_diagram(b, false),
        Suite::FormFromBeads => form_from_beads(b),
        Suite::ReductionRelation => reduction_relation(b),
        Suite::FirstCoefficient => first_coefficient(b),
        Suite::Reversal => reversal(b),
        Suite::MuFiber => mu_fiber(b),
        Suite::Primitivity => primitivity(b),
        Suite::WeightParity => weight_parity(b),
        Suite::ZCaliber => z_caliber(b),
        Suite::Denjoy => denjoy(b),
        Suite::Lgz => lgz(b),
        Suite::ContinuantIdentities => continuant_identities(b),
        Suite::TzKnead => tz_knead(b),
    };
    tally.into_report(suite, b)
}

/// Every suite in registration order.
pub fn verify_all(b: &Bounds) -> Vec<VerificationReport> {
    Suite::ALL.iter().map(|&s| verify_suite(s, b)).collect()
}

// ---------------------------------------------------------------------------
// Forms in machine integers. The suites stay far below `2³¹` in every
// coefficient, so `i64` products cannot overflow.

type Tri = (i64, i64, i64);

fn to_form(f: Tri) -> Form {
    Form::new(f.0, f.1, f.2)
}

fn from_form(f: &Form) -> Option<Tri> {
    Some((f.a.to_i64()?, f.b.to_i64()?, f.c.to_i64()?))
}

fn key(f: Tri) -> Vec<BigInt> {
    vec![f.0.into(), f.1.into(), f.2.into()]
}

fn show(f: Tri) -> String {
    format!("({},{},{})", f.0, f.1, f.2)
}

fn disc(f: Tri) -> i64 {
    f.1 * f.1 - 4 * f.0 * f.2
}

fn isqrt(n: i64) -> i64 {
    n.sqrt()
}

fn is_square_i(n: i64) -> bool {
    n >= 0 && isqrt(n).pow(2) == n
}

fn z_reduced(f: Tri) -> bool {
    f.0 > 0 && f.1 > 0 && f.2 > 0 && f.1 > f.0 + f.2
}

fn g_reduced(f: Tri) -> bool {
    f.0 * f.2 < 0 && f.1 > (f.0 + f.2).abs()
}

/// `f(αx + βy, γx + δy)`.
fn act(f: Tri, [al, be, ga, de]: [i64; 4]) -> Tri {
    let (a, b, c) = f;
    (
        a * al * al + b * al * ga + c * ga * ga,
        2 * a * al * be + b * (al * de + be * ga) + 2 * c * ga * de,
        a * be * be + b * be * de + c * de * de,
    )
}

/// Zagier's operator: the least `n` with `2An − B > √Δ`, found by sign tests.
fn rz(d: i64, f: Tri) -> Tri {
    let (a, b, _) = f;
    let beyond = |n: i64| {
        let w = 2 * a * n - b;
        w > 0 && w * w > d
    };
    let mut n = (b + isqrt(d)).div_euclid(2 * a);
    while !beyond(n) {
        n += 1;
    }
    act(f, [n, 1, -1, 0])
}

/// Gauss's operator: `|δ|` is the largest `m` with `2|A|m − B < √Δ`, and
/// `δ` has the sign of `A`.
fn rg(d: i64, f: Tri) -> Tri {
    let (a, b, _) = f;
    let below = |m: i64| {
        let w = 2 * a.abs() * m - b;
        w < 0 || w * w < d
    };
    let mut m = (b + isqrt(d)).div_euclid(2 * a.abs());
    while !below(m) {
        m -= 1;
    }
    while below(m + 1) {
        m += 1;
    }
    let delta = if a > 0 { m } else { -m };
    act(f, [delta, 1, -1, 0])
}

fn content(f: Tri) -> i64 {
    f.0.gcd(&f.1).gcd(&f.2)
}

/// Z-reduced forms of discriminant `d`, by factoring. With `e = A − C` and
/// `S = A + C`, `(B − S)(B + S) = Δ − e²`, so each factor pair `d₁ < d₂` of
/// equal parity gives `B = (d₁ + d₂)/2`, `S = (d₂ − d₁)/2`.
fn z_forms(d: i64) -> Vec<Tri> {
    let mut out = Vec::new();
    let s = isqrt(d);
    for e in -s..=s {
        let n = d - e * e;
        let mut d1 = 1;
        while d1 * d1 < n {
            if n % d1 == 0 {
                let d2 = n / d1;
                if (d1 + d2) % 2 == 0 {
                    let (b, sum) = ((d1 + d2) / 2, (d2 - d1) / 2);
                    if (sum + e) % 2 == 0 {
                        let (a, c) = ((sum + e) / 2, (sum - e) / 2);
                        if a > 0 && c > 0 {
                            out.push((a, b, c));
                        }
                    }
                }
            }
            d1 += 1;
        }
    }
    out.sort();
    out
}

/// G-reduced forms of discriminant `d`, by scanning `|A| + |C| < √Δ` and
/// `0 < B < √Δ`.
fn g_forms(d: i64) -> Vec<Tri> {
    let mut out = Vec::new();
    let s = isqrt(d);
    for abs_a in 1..=s {
        for b in 1..=s {
            let m = d - b * b;
            if m % (4 * abs_a) != 0 {
                continue;
            }
            let abs_c = m / (4 * abs_a);
            for sign in [1, -1] {
                let f = (sign * abs_a, b, -sign * abs_c);
                if g_reduced(f) {
                    out.push(f);
                }
            }
        }
    }
    out.sort();
    out
}

/// Walks `rz` from `f` until it returns, giving up after `limit` steps.
fn z_cycle(d: i64, f: Tri, limit: usize) -> Option<Vec<Tri>> {
    let mut cycle = vec![f];
    let mut x = rz(d, f);
    while x != f {
        if cycle.len() > limit {
            return None;
        }
        cycle.push(x);
        x = rz(d, x);
    }
    Some(cycle)
}

/// Partitions the Z-reduced forms into `rz`-cycles.
fn z_cycles(d: i64, forms: &[Tri]) -> std::result::Result<Vec<Vec<Tri>>, Tri> {
    let members: HashSet<Tri> = forms.iter().copied().collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for &f in forms {
        if seen.contains(&f) {
            continue;
        }
        let cycle = z_cycle(d, f, forms.len()).ok_or(f)?;
        for &g in &cycle {
            if !members.contains(&g) || !seen.insert(g) {
                return Err(f);
            }
        }
        out.push(cycle);
    }
    Ok(out)
}

fn discriminants(max: u64) -> Vec<u64> {
    (5..=max)
        .filter(|&d| d % 4 <= 1 && !is_square_i(d as i64))
        .collect()
}

/// Runs `check` on every discriminant in `list` in parallel and merges the
/// shards in order.
fn over_deltas<F>(list: Vec<u64>, check: F) -> Tally
where
    F: Fn(&Ctx, &mut Tally) + Sync + Send,
{
    let shards: Vec<Tally> = list
        .into_par_iter()
        .map(|d| {
            let mut t = Tally::default();
            if let Some(ctx) = Ctx::new(d, &mut t) {
                check(&ctx, &mut t);
            }
            t
        })
        .collect();
    let mut total = Tally::default();
    for s in shards {
        total.merge(s);
    }
    total
}

/// Per-discriminant state shared by a suite's checks.
struct Ctx {
    d: i64,
    delta: BigInt,
    disc: Discriminant,
    pell: PellSolution,
}

impl Ctx {
    fn new(d: u64, t: &mut Tally) -> Option<Ctx> {
        let delta = BigInt::from(d);
        let fail = |t: &mut Tally, found: String| {
            t.fail(
                Some(delta.clone()),
                Vec::new(),
                "fundamental Pell solution",
                "t, u > 0 with t² − Δu² = ±4",
                found,
            )
        };
        let pell = match fundamental_solution(&delta) {
            Ok(p) => p,
            Err(e) => {
                fail(t, format!("error: {e}"));
                return None;
            }
        };
        if !pell.t.is_positive()
            || !pell.u.is_positive()
            || pell.residual(&delta) != BigInt::from(pell.epsilon.value())
        {
            fail(t, pell.to_string());
            return None;
        }
        let disc = Discriminant::new(delta.clone()).ok()?;
        Some(Ctx {
            d: d as i64,
            delta,
            disc,
            pell,
        })
    }

    fn fail(
        &self,
        t: &mut Tally,
        f: Tri,
        what: &str,
        expected: impl fmt::Display,
        found: impl fmt::Display,
    ) {
        self.record(t, f, what, &expected, &found);
    }

    fn record(
        &self,
        t: &mut Tally,
        f: Tri,
        what: &str,
        expected: &dyn fmt::Display,
        found: &dyn fmt::Display,
    ) {
        t.record(
            Some(self.delta.clone()),
            key(f),
            &format!("{what} at {}", show(f)),
            expected,
            found,
        );
    }

    fn gamma(&self, f: Tri) -> Result<NatString> {
        gamma_with(&to_form(f), &self.pell)
    }

    fn beta(&self, f: Tri) -> Result<NatString> {
        beta_with(&to_form(f), &self.pell)
    }

    fn sigma(&self, f: Tri) -> Result<BinString> {
        sigma_with(&to_form(f), &self.pell)
    }
}

fn shown<T: fmt::Display>(r: &Result<T>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

/// Records a failure unless `found` is `Ok(expected)`.
fn expect_eq<T: PartialEq + fmt::Display>(
    ctx: &Ctx,
    t: &mut Tally,
    f: Tri,
    what: &str,
    expected: &Result<T>,
    found: &Result<T>,
) {
    match (expected, found) {
        (Ok(e), Ok(v)) if e == v => {}
        _ => ctx.fail(t, f, what, shown(expected), shown(found)),
    }
}

fn mu_tri(f: Tri) -> Result<Tri> {
    let m = mu(&to_form(f))?;
    from_form(&m).ok_or_else(|| Error::Internal(format!("μ{} overflowed", show(f))))
}

fn first_is_one(s: &NatString) -> bool {
    s.first().is_some_and(One::is_one)
}

fn last_is_one(s: &NatString) -> bool {
    s.last().is_some_and(One::is_one)
}

// ---------------------------------------------------------------------------
// Form-based suites.

/// `σ(R_Z f) = rotate_bin(σ(f))` on every Z-reduced form.
fn rotation(b: &Bounds) -> Tally {
    over_deltas(discriminants(b.delta_max), |ctx, t| {
        let forms = z_forms(ctx.d);
        let mut sig: HashMap<Tri, BinString> = HashMap::new();
        for &f in &forms {
            match ctx.sigma(f) {
                Ok(s) => {
                    sig.insert(f, s);
                }
                Err(e) => ctx.fail(t, f, "σ", "a binary string", format!("error: {e}")),
            }
        }
        for &f in &forms {
            t.case();
            let g = rz(ctx.d, f);
            let production = r_z_in(&ctx.disc, &to_form(f));
            if production.as_ref().ok() != Some(&to_form(g)) {
                ctx.fail(t, f, "R_Z", show(g), shown(&production));
            }
            let (Some(sf), Some(sg)) = (sig.get(&f), sig.get(&g)) else {
                if !z_reduced(g) {
                    ctx.fail(t, f, "R_Z stays Z-reduced", "a Z-reduced form", show(g));
                }
                continue;
            };
            match rotate_bin(sf) {
                Ok(r) if &r == sg => {}
                r => ctx.fail(t, f, "σ(R_Z f) = rotate_bin(σ f)", shown(&r), sg),
            }
        }
    })
}

/// The `μ` preimage candidate in `G⁺` (first branch) or `G⁻` (second).
fn mu_preimage(g: Tri, plus: bool) -> Tri {
    let (a, b, c) = g;
    if plus {
        (a, b - 2 * a, c - b + a)
    } else {
        (a - b + c, b - 2 * c, c)
    }
}

fn in_mu_image(g: Tri, plus: bool) -> bool {
    let f = mu_preimage(g, plus);
    g_reduced(f) && if plus { f.0 > 0 } else { f.0 < 0 }
}

/// `μ(G±) = β⁻¹(η±(S₁))`: a Z-reduced form lies in the image of the plus
/// (minus) branch exactly when its bead sequence starts (ends) with 1.
fn check_mu_image(ctx: &Ctx, t: &mut Tally, g: Tri, beads: &Result<NatString>, plus: bool) {
    let Ok(beads) = beads else {
        ctx.fail(t, g, "β", "a bead sequence", shown(beads));
        return;
    };
    let claimed = if plus {
        first_is_one(beads)
    } else {
        last_is_one(beads)
    };
    let actual = in_mu_image(g, plus);
    let side = if plus { "G⁺" } else { "G⁻" };
    if claimed != actual {
        ctx.fail(
            t,
            g,
            &format!("membership in μ({side}) against β = {beads}"),
            claimed,
            actual,
        );
    } else if actual {
        let f = mu_preimage(g, plus);
        match mu_tri(f) {
            Ok(h) if h == g => {}
            h => ctx.fail(t, f, "μ of the preimage", show(g), shown(&h.map(show))),
        }
    }
}

/// Both commuting squares of the `ξ` theorem, the `μ`-image description, and
/// (plus side) `γ ∘ ξ = id` on short strings.
fn xi_diagram(b: &Bounds, plus: bool) -> Tally {
    let mut total = over_deltas(discriminants(b.delta_max), |ctx, t| {
        for f in g_forms(ctx.d) {
            if (f.0 > 0) != plus {
                continue;
            }
            t.case();
            let m = match mu_tri(f) {
                Ok(m) if z_reduced(m) && disc(m) == ctx.d => m,
                m => {
                    ctx.fail(
                        t,
                        f,
                        "μ",
                        "a Z-reduced form of the same Δ",
                        shown(&m.map(show)),
                    );
                    continue;
                }
            };
            let want = if plus {
                ctx.gamma(f).and_then(|s| eta_plus(&s))
            } else {
                let r = (-f.0, f.1, -f.2);
                ctx.gamma(r).and_then(|s| eta_minus(&s))
            };
            let what = if plus {
                "β(μ f) = η⁺(γ f)"
            } else {
                "β(μ f) = η⁻(γ(ρ f))"
            };
            expect_eq(ctx, t, f, what, &want, &ctx.beta(m));
        }
        for g in z_forms(ctx.d) {
            t.case();
            check_mu_image(ctx, t, g, &ctx.beta(g), plus);
        }
    });
    if plus {
        total.merge(xi_section(b));
    }
    total
}

/// Every natural string with length in `lens` and entries in `1..=max`, in
/// lexicographic order by length then entries.
fn all_strings(lens: std::ops::RangeInclusive<usize>, max: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    if max == 0 {
        return out;
    }
    for l in lens {
        let mut v = vec![1u64; l];
        loop {
            out.push(v.clone());
            let mut i = l;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if v[i] < max {
                    v[i] += 1;
                    break;
                }
                v[i] = 1;
            }
            if v.iter().all(|&q| q == 1) {
                break;
            }
        }
    }
    out
}

/// Continuant by the convergent recursion `p_k = q_k p_{k−1} + p_{k−2}`,
/// with the zero-end conventions `[0, q₂, …] = [q₃, …]`,
/// `[…, q_{l−1}, 0] = […, q_{l−2}]`, `[0] = 0`, `[] = 1`.
fn cont_small(s: &[u64]) -> u128 {
    match s {
        [] => 1,
        [0] => 0,
        [0, rest @ ..] => cont_small(&rest[1..]),
        [.., 0] => cont_small(&s[..s.len() - 2]),
        _ => {
            let (mut p, mut prev) = (1u128, 0u128);
            for &q in s {
                let next = q as u128 * p + prev;
                prev = p;
                p = next;
            }
            p
        }
    }
}

fn nat(v: &[u64]) -> NatString {
    NatString::from_u64s(v).expect("generated entries are positive")
}

fn string_key(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&q| BigInt::from(q)).collect()
}

fn show_string(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

/// `(k, 1)` solves `t² − Δu² = ∓4` when `Δ = k² ± 4`, and `u = 1` cannot be
/// beaten. Only `Δ = 5` carries both signs at `u = 1`; the minus sign wins.
fn unit_pell(k: u128, delta: &BigInt) -> PellSolution {
    if delta == &BigInt::from(5) {
        return PellSolution {
            t: BigInt::one(),
            u: BigInt::one(),
            epsilon: PellSign::Minus,
        };
    }
    let t = BigInt::from(k);
    let epsilon = if &t * &t - delta < BigInt::zero() {
        PellSign::Minus
    } else {
        PellSign::Plus
    };
    PellSolution {
        t,
        u: BigInt::one(),
        epsilon,
    }
}

/// `γ(ξ(s)) = s` with the predicted discriminant, on all short strings. At
/// `Δ = 5` the strings `(1)` and `(1,1)` share the form `(1,1,−1)`.
fn xi_section(b: &Bounds) -> Tally {
    let mut t = Tally::default();
    for v in all_strings(1..=b.string_len_max, b.string_entry_max) {
        t.case();
        let l = v.len();
        let s = nat(&v);
        let input = format!("ξ({})", show_string(&v));
        let f = match xi(&s) {
            Ok(f) => f,
            Err(e) => {
                t.fail(None, string_key(&v), input, "a form", format!("error: {e}"));
                continue;
            }
        };
        let inner = if l >= 2 { cont_small(&v[1..l - 1]) } else { 0 };
        let k = cont_small(&v) + inner;
        let want_delta = BigInt::from(k) * BigInt::from(k) + if l % 2 == 1 { 4 } else { -4 };
        let delta = f.discriminant();
        if delta != want_delta {
            t.fail(
                Some(delta.clone()),
                string_key(&v),
                &input,
                &want_delta,
                &delta,
            );
            continue;
        }
        let tri = from_form(&f);
        if !tri.is_some_and(|g| g_reduced(g) && g.0 > 0) {
            t.fail(Some(delta), string_key(&v), &input, "a G⁺ form", &f);
            continue;
        }
        let back = gamma_with(&f, &unit_pell(k, &delta));
        if v == [1, 1] {
            let single = xi(&nat(&[1]));
            if single.as_ref().ok() != Some(&f) || back.as_ref().ok() != Some(&nat(&[1])) {
                t.fail(
                    Some(delta),
                    string_key(&v),
                    &input,
                    "the Δ = 5 collision: ξ(1,1) = ξ(1) and γ gives (1)",
                    format!("ξ(1) = {}, γ = {}", shown(&single), shown(&back)),
                );
            }
        } else if back.as_ref().ok() != Some(&s) {
            t.fail(
                Some(delta),
                string_key(&v),
                format!("γ∘{input}"),
                &s,
                shown(&back),
            );
        }
    }
    t
}

/// `τ ∘ β = id` on Z-reduced forms of discriminant `k² ± 4`, `β ∘ τ = id` on
/// short strings, and the discriminant formula for `τ`.
fn form_from_beads(b: &Bounds) -> Tally {
    let mut special: Vec<u64> = (1u64..)
        .map(|k| k * k + 4)
        .take_while(|&d| d <= b.delta_max)
        .chain(
            (3u64..)
                .map(|k| k * k - 4)
                .take_while(|&d| d <= b.delta_max),
        )
        .collect();
    special.sort_unstable();
    special.dedup();
    let mut total = over_deltas(special, |ctx, t| {
        for g in z_forms(ctx.d) {
            t.case();
            let beads = ctx.beta(g);
            let back = beads.as_ref().map_err(Clone::clone).and_then(tau);
            if back.as_ref().ok() != Some(&to_form(g)) {
                ctx.fail(
                    t,
                    g,
                    &format!("τ(β f) with β = {}", shown(&beads)),
                    show(g),
                    shown(&back),
                );
            }
        }
    });
    total.merge(beta_tau_strings(b));
    total
}

fn beta_tau_strings(b: &Bounds) -> Tally {
    let mut t = Tally::default();
    for v in all_strings(2..=b.string_len_max, b.string_entry_max) {
        t.case();
        let l = v.len();
        let s = nat(&v);
        let input = format!("τ({})", show_string(&v));
        let f = match tau(&s) {
            Ok(f) => f,
            Err(e) => {
                t.fail(None, string_key(&v), input, "a form", format!("error: {e}"));
                continue;
            }
        };
        let mut both = v.clone();
        both[0] -= 1;
        both[l - 1] -= 1;
        let k = cont_small(&v) as i64 - cont_small(&both) as i64;
        let want_delta = BigInt::from(k) * BigInt::from(k) + if l % 2 == 0 { 4 } else { -4 };
        let delta = f.discriminant();
        if delta != want_delta {
            t.fail(
                Some(delta.clone()),
                string_key(&v),
                &input,
                &want_delta,
                &delta,
            );
            continue;
        }
        if !from_form(&f).is_some_and(z_reduced) {
            t.fail(Some(delta), string_key(&v), &input, "a Z-reduced form", &f);
            continue;
        }
        let back = beta_with(&f, &unit_pell(u128::from(k.unsigned_abs()), &delta));
        if v == [1, 1, 1] {
            let pair = tau(&nat(&[1, 1]));
            if pair.as_ref().ok() != Some(&f) || back.as_ref().ok() != Some(&nat(&[1, 1])) {
                t.fail(
                    Some(delta),
                    string_key(&v),
                    &input,
                    "the Δ = 5 collision: τ(1,1,1) = τ(1,1) and β gives (1,1)",
                    format!("τ(1,1) = {}, β = {}", shown(&pair), shown(&back)),
                );
            }
        } else if back.as_ref().ok() != Some(&s) {
            t.fail(
                Some(delta),
                string_key(&v),
                format!("β∘{input}"),
                &s,
                shown(&back),
            );
        }
    }
    t
}

fn pow_rz(d: i64, mut f: Tri, n: u64) -> Tri {
    for _ in 0..n {
        f = rz(d, f);
    }
    f
}

/// The five identities relating Gauss and Zagier reduction through `γ`,
/// `β` and `μ`.
fn reduction_relation(b: &Bounds) -> Tally {
    over_deltas(discriminants(b.delta_max), |ctx, t| {
        for f in g_forms(ctx.d).into_iter().filter(|f| f.0 > 0) {
            t.case();
            let r = rg(ctx.d, f);
            let production = r_g_in(&ctx.disc, &to_form(f));
            if production.as_ref().ok() != Some(&to_form(r)) {
                ctx.fail(t, f, "R_G", show(r), shown(&production));
            }
            if !(g_reduced(r) && r.0 < 0) {
                ctx.fail(t, f, "R_G flips into G⁻", "a G⁻ form", show(r));
                continue;
            }
            let r2 = rg(ctx.d, r);
            let gf = match ctx.gamma(f) {
                Ok(s) => s,
                Err(e) => {
                    ctx.fail(t, f, "γ", "a natural string", format!("error: {e}"));
                    continue;
                }
            };
            let once = t_g(&gf);
            expect_eq(
                ctx,
                t,
                f,
                "γ(ρ R_G f) = T_G(γ f)",
                &once,
                &ctx.gamma((-r.0, r.1, -r.2)),
            );
            let twice = once.and_then(|s| t_g(&s));
            expect_eq(ctx, t, f, "γ(R_G² f) = T_G²(γ f)", &twice, &ctx.gamma(r2));
            let mf = match mu_tri(f) {
                Ok(m) => m,
                Err(e) => {
                    ctx.fail(t, f, "μ", "a form", format!("error: {e}"));
                    continue;
                }
            };
            expect_eq(
                ctx,
                t,
                f,
                "μ(R_G f) = R_Z(μ f)",
                &Ok(show(rz(ctx.d, mf))),
                &mu_tri(r).map(show),
            );
            let q2 = gf.get(1).unwrap_or(&gf[0]).to_u64().unwrap_or(u64::MAX);
            expect_eq(
                ctx,
                t,
                f,
                &format!("μ(R_G² f) = R_Z^{q2}(μ f)"),
                &Ok(show(pow_rz(ctx.d, mf, q2))),
                &mu_tri(r2).map(show),
            );
        }
        for g in z_forms(ctx.d) {
            t.case();
            let want = ctx.beta(g).and_then(|s| t_z(&s));
            expect_eq(
                ctx,
                t,
                g,
                "β(R_Z g) = T_Z(β g)",
                &want,
                &ctx.beta(rz(ctx.d, g)),
            );
        }
    })
}

/// `R_G f = f(q₁x + y, −x)` with `q₁` the first entry of `γ(f)`.
fn first_coefficient(b: &Bounds) -> Tally {
    over_deltas(discriminants(b.delta_max), |ctx, t| {
        for f in g_forms(ctx.d).into_iter().filter(|f| f.0 > 0) {
            t.case();
            let q1 = match ctx.gamma(f) {
                Ok(s) => s[0].to_i64().expect("quotients of small forms are small"),
                Err(e) => {
                    ctx.fail(t, f, "γ", "a natural string", format!("error: {e}"));
                    continue;
                }
            };
            let want = rg(ctx.d, f);
            let found = act(f, [q1, 1, -1, 0]);
            if want != found {
                ctx.fail(
                    t,
                    f,
                    &format!("f(q₁x + y, −x) with q₁ = {q1}"),
                    show(want),
                    show(found),
                );
            }
        }
    })
}

/// `γ(fᴿ) = γ(ρ f)ᴿ` on `G⁻` and `β(fᴿ) = β(f)ᴿ` on `Z`.
fn reversal(b: &Bounds) -> Tally {
    over_deltas(discriminants(b.delta_max), |ctx, t| {
        for f in g_forms(ctx.d).into_iter().filter(|f| f.0 < 0) {
            t.case();
            let want = ctx.gamma((-f.0, f.1, -f.2)).map(|s| s.reversed());
            expect_eq(
                ctx,
                t,
                f,
                "γ(fᴿ) = γ(ρ f)ᴿ",
                &want,
                &ctx.gamma((f.2, f.1, f.0)),
            );
        }
        for g in z_forms(ctx.d) {
            t.case();
            let want = ctx.beta(g).map(|s| s.reversed());
            expect_eq(
                ctx,
                t,
                g,
                "β(gᴿ) = β(g)ᴿ",
                &want,
                &ctx.beta((g.2, g.1, g.0)),
            );
        }
    })
}

/// For `g ∈ G⁻`, some `f ∈ G⁺` has `μ(f) = μ(g)` exactly when
/// `R_G(g) = g(−x + y, −x)`, and then `f` is that form. `μ` is also checked
/// injective on each half.
fn mu_fiber(b: &Bounds) -> Tally {
    over_deltas(discriminants(b.delta_max), |ctx, t| {
        let forms = g_forms(ctx.d);
        let mut plus_image: HashMap<Tri, Tri> = HashMap::new();
        let mut minus_image: HashMap<Tri, Tri> = HashMap::new();
        for &f in &forms {
            let image = if f.0 > 0 {
                &mut plus_image
            } else {
                &mut minus_image
            };
            match mu_tri(f) {
                Ok(m) => {
                    if let Some(other) = image.insert(m, f) {
                        ctx.fail(
                            t,
                            f,
                            "μ injective on each half",
                            "distinct images",
                            format!("shares {} with {}", show(m), show(other)),
                        );
                    }
                }
                Err(e) => ctx.fail(t, f, "μ", "a form", format!("error: {e}")),
            }
        }
        for &g in forms.iter().filter(|g| g.0 < 0) {
            t.case();
            let Some(m) = minus_image
                .iter()
                .find_map(|(m, h)| (*h == g).then_some(*m))
            else {
                continue;
            };
            let partner = plus_image.get(&m).copied();
            let r = rg(ctx.d, g);
            let s = act(g, [-1, 1, -1, 0]);
            let ok = match partner {
                Some(f) => r == s && f == r,
                None => r != s,
            };
            if !ok {
                ctx.fail(
                    t,
                    g,
                    "μ fibre",
                    format!(
                        "partner iff R_G g = g(−x+y,−x); R_G g = {}, g(−x+y,−x) = {}",
                        show(r),
                        show(s)
                    ),
                    format!(
                        "partner {}",
                        partner.map(show).unwrap_or_else(|| "none".into())
                    ),
                );
            }
        }
    })
}

/// Smallest rotation period, by comparing rotations directly.
fn rotation_period<T: PartialEq>(s: &[T]) -> usize {
    let n = s.len();
    (1..=n)
        .find(|&p| n.is_multiple_of(p) && (0..n).all(|i| s[i] == s[(i + p) % n]))
        .unwrap_or(n)
}

/// On primitive Z-reduced forms `σ` is injective with primitive images;
/// plus the `μ`-image description on every Z-reduced form.
fn primitivity(b: &Bounds) -> Tally {
    over_deltas(discriminants(b.delta_max), |ctx, t| {
        let mut images: HashMap<BinString, Tri> = HashMap::new();
        for g in z_forms(ctx.d) {
            t.case();
            let beads = ctx.beta(g);
            check_mu_image(ctx, t, g, &beads, true);
            check_mu_image(ctx, t, g, &beads, false);
            if content(g) != 1 {
                continue;
            }
            let s = match beads.and_then(|s| sb(&s)) {
                Ok(s) => s,
                Err(e) => {
                    ctx.fail(t, g, "σ", "a binary string", format!("error: {e}"));
                    continue;
                }
            };
            if rotation_period(s.bits()) != s.len() {
                ctx.fail(
                    t,
                    g,
                    "σ of a primitive form is primitive",
                    "a primitive string",
                    &s,
                );
            }
            if let Some(other) = images.insert(s.clone(), g) {
                ctx.fail(
                    t,
                    g,
                    "σ injective on primitive forms",
                    "distinct strings",
                    format!("{s} also from {}", show(other)),
                );
            }
        }
    })
}

/// Checks that `pell` is the least positive solution inside the window,
/// in exact 128-bit arithmetic. Returns false if the window is too small to
/// reach it, in which case only the absence of smaller solutions is known.
fn pell_minimal_in_window(
    d: u128,
    pell: &PellSolution,
    window: u64,
) -> std::result::Result<bool, String> {
    let target = pell.u.to_u64().filter(|&u| u <= window);
    let top = target.unwrap_or(window);
    for u in 1..=top {
        let du2 = d * (u as u128) * (u as u128);
        for sign in [PellSign::Minus, PellSign::Plus] {
            let t2 = match sign {
                PellSign::Minus => du2 - 4,
                PellSign::Plus => du2 + 4,
            };
            let t = t2.sqrt();
            if t * t != t2 {
                continue;
            }
            return if Some(u) == target && BigInt::from(t) == pell.t && sign == pell.epsilon {
                Ok(true)
            } else {
                Err(format!("t={t} u={u} epsilon={}", sign.value()))
            };
        }
    }
    match target {
        Some(_) => Err("no solution at the claimed u".into()),
        None => Ok(false),
    }
}

/// Weight parity of every class matches the Pell sign, whose minimality is
/// re-checked by brute force.
fn weight_parity(b: &Bounds) -> Tally {
    let window = b.pell_window;
    over_deltas(discriminants(b.delta_max), move |ctx, t| {
        match pell_minimal_in_window(ctx.d as u128, &ctx.pell, window) {
            Ok(true) => {}
            Ok(false) => t.note("discriminants whose fundamental u lies beyond the brute-force window (no smaller solution found inside it)"),
            Err(smaller) => {
                t.fail(Some(ctx.delta.clone()), Vec::new(), "Pell minimality", &ctx.pell, smaller);
                return;
            }
        }
        let odd_expected = ctx.pell.epsilon == PellSign::Minus;
        let cycles = match z_cycles(ctx.d, &z_forms(ctx.d)) {
            Ok(c) => c,
            Err(f) => {
                ctx.fail(
                    t,
                    f,
                    "Zagier cycle",
                    "a closed cycle of Z-reduced forms",
                    "escaped",
                );
                return;
            }
        };
        for cycle in cycles {
            t.case();
            let mut weights = Vec::new();
            for &f in &cycle {
                match ctx.sigma(f) {
                    Ok(s) => weights.push(s.weight()),
                    Err(e) => ctx.fail(t, f, "σ", "a binary string", format!("error: {e}")),
                }
            }
            let f = cycle[0];
            if weights.windows(2).any(|w| w[0] != w[1]) {
                ctx.fail(
                    t,
                    f,
                    "weight constant on the class",
                    "one weight",
                    format!("{weights:?}"),
                );
            } else if let Some(&w) = weights.first() {
                if (w % 2 == 1) != odd_expected {
                    ctx.fail(
                        t,
                        f,
                        "weight parity",
                        if odd_expected { "odd" } else { "even" },
                        format!("weight {w}"),
                    );
                }
            }
        }
    })
}

/// Every primitive binary necklace of length `1..=max` with at least one 1,
/// as its least rotation.
fn primitive_necklaces(max: usize) -> Vec<Vec<bool>> {
    let mut out = Vec::new();
    for l in 1..=max {
        for m in 1u32..(1 << l) {
            let s: Vec<bool> = (0..l).rev().map(|i| m >> i & 1 == 1).collect();
            let least = (0..l).all(|k| {
                let r: Vec<bool> = s[k..].iter().chain(&s[..k]).copied().collect();
                s <= r
            });
            if least && rotation_period(&s) == l {
                out.push(s);
            }
        }
    }
    out
}

/// The classes reached from a necklace through `τ ∘ sb⁻¹` partition its
/// length: one class for odd weight, two for even weight.
fn z_caliber(b: &Bounds) -> Tally {
    let mut t = Tally::default();
    for s in primitive_necklaces(b.necklace_len_max) {
        t.case();
        let l = s.len();
        let weight = s.iter().filter(|&&x| x).count();
        let shown_s = BinString::from_bits(s.clone()).to_string();
        let skey: Vec<BigInt> = s.iter().map(|&x| BigInt::from(x as u8)).collect();
        let mut forms = Vec::new();
        for k in 0..l {
            let r = BinString::from_bits(s[k..].iter().chain(&s[..k]).copied().collect());
            match sb_inv(&r).and_then(|q| tau(&q)).map(|f| from_form(&f)) {
                Ok(Some(f)) if z_reduced(f) => forms.push(f),
                other => {
                    t.fail(
                        None,
                        skey.clone(),
                        format!("τ(sb⁻¹({r}))"),
                        "a Z-reduced form",
                        shown(&other.map(|f| format!("{f:?}"))),
                    );
                }
            }
        }
        if forms.len() != l {
            continue;
        }
        let d = disc(forms[0]);
        let mut classes: Vec<Vec<Tri>> = Vec::new();
        let mut broken = false;
        for &f in &forms {
            if classes.iter().any(|c| c.contains(&f)) {
                continue;
            }
            match z_cycle(d, f, 4 * l + 4) {
                Some(c) => classes.push(c),
                None => broken = true,
            }
        }
        let want_classes = if weight % 2 == 1 { 1 } else { 2 };
        let calibers: Vec<usize> = classes.iter().map(Vec::len).collect();
        if broken || classes.len() != want_classes || calibers.iter().sum::<usize>() != l {
            t.fail(
                Some(BigInt::from(d)),
                skey,
                format!("necklace {shown_s}"),
                format!("{want_classes} class(es) with calibers summing to {l}"),
                format!(
                    "calibers {calibers:?}{}",
                    if broken {
                        ", an orbit did not close"
                    } else {
                        ""
                    }
                ),
            );
        }
    }
    t
}

/// Sign of `(p + s√d)/q − a` for `s = ±1` and nonsquare `d`.
fn surd_cmp(p: i64, q: i64, d: i64, s: i64, a: i64) -> std::cmp::Ordering {
    use std::cmp::Ordering::{Greater, Less};
    let w = p - a * q;
    let numerator_positive = if s > 0 {
        w >= 0 || w * w < d
    } else {
        w > 0 && w * w > d
    };
    if numerator_positive == (q > 0) {
        Greater
    } else {
        Less
    }
}

/// `(p + √d)/q` held in machine integers with `q | d − p²`, stepped by sign
/// tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct SmallSurd {
    p: i64,
    q: i64,
    d: i64,
}

impl SmallSurd {
    fn new(p: i64, q: i64, d: i64) -> Self {
        if (d - p * p) % q != 0 {
            let k = q.abs();
            SmallSurd {
                p: p * k,
                q: q * k,
                d: d * k * k,
            }
        } else {
            SmallSurd { p, q, d }
        }
    }

    fn floor(self) -> i64 {
        let mut a = (self.p + isqrt(self.d)).div_euclid(self.q);
        while surd_cmp(self.p, self.q, self.d, 1, a).is_lt() {
            a -= 1;
        }
        while surd_cmp(self.p, self.q, self.d, 1, a + 1).is_gt() {
            a += 1;
        }
        a
    }

    /// `1/(x − a)`.
    fn invert_after(self, a: i64) -> Self {
        let p = a * self.q - self.p;
        SmallSurd {
            p,
            q: (self.d - p * p) / self.q,
            d: self.d,
        }
    }

    fn step(self, kind: CfKind) -> (i64, Self) {
        match kind {
            CfKind::Regular => {
                let a = self.floor();
                (a, self.invert_after(a))
            }
            CfKind::Negative => {
                let a = self.floor() + 1;
                let next = self.invert_after(a);
                (a, SmallSurd { q: -next.q, ..next })
            }
            CfKind::Denjoy => {
                let a = i64::from(surd_cmp(self.p, self.q, self.d, 1, 1).is_gt());
                (a, self.invert_after(a))
            }
        }
    }

    fn terms(self, kind: CfKind, n: usize) -> Vec<i64> {
        let mut x = self;
        (0..n)
            .map(|_| {
                let (a, next) = x.step(kind);
                x = next;
                a
            })
            .collect()
    }

    /// Pre-period length and period, by state recurrence.
    fn periodic(self, kind: CfKind) -> (usize, Vec<i64>) {
        let mut seen = HashMap::new();
        let mut terms = Vec::new();
        let mut x = self;
        loop {
            if let Some(&start) = seen.get(&x) {
                return (start, terms.split_off(start));
            }
            seen.insert(x, terms.len());
            let (a, next) = x.step(kind);
            terms.push(a);
            x = next;
        }
    }

    fn to_surd(self) -> QuadraticSurd {
        QuadraticSurd::new(self.p, self.q, self.d).expect("sampled surds are valid")
    }
}

impl fmt::Display for SmallSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}+√{})/{}", self.p, self.d, self.q)
    }
}

/// Three periods of `denjoy_period(f)` prefix the Denjoy expansion of
/// `(B − 2A + √Δ)/(2A)`, and the period is minimal. For imprimitive forms
/// the string can be a proper power; then its root must be the period of
/// the primitive part, which is the same number.
fn denjoy(b: &Bounds) -> Tally {
    over_deltas(discriminants(b.delta_max), |ctx, t| {
        for f in z_forms(ctx.d) {
            t.case();
            let period = match ctx.sigma(f) {
                Ok(s) => zero_to_zero_one(&s),
                Err(e) => {
                    ctx.fail(t, f, "σ", "a binary string", format!("error: {e}"));
                    continue;
                }
            };
            let n = period.len();
            let three: BinString = period.bits().iter().cycle().take(3 * n).copied().collect();
            let x = SmallSurd::new(f.1 - 2 * f.0, 2 * f.0, ctx.d);
            let direct = denjoy_surd(&x.to_surd(), 3 * n);
            if direct.as_ref().ok() != Some(&three) {
                ctx.fail(t, f, &format!("denjoy_surd of {x}"), &three, shown(&direct));
            }
            let independent: BinString = x
                .terms(CfKind::Denjoy, 3 * n)
                .into_iter()
                .map(|a| a == 1)
                .collect();
            if independent != three {
                ctx.fail(t, f, &format!("Denjoy digits of {x}"), &three, &independent);
            }
            let minimal = rotation_period(period.bits());
            if minimal == n {
                continue;
            }
            let g = content(f);
            if g == 1 {
                ctx.fail(
                    t,
                    f,
                    "Denjoy period minimal",
                    &period,
                    format!("period {minimal}"),
                );
                continue;
            }
            t.note("imprimitive forms whose σ-derived Denjoy string is a proper power");
            let root = from_form(&to_form((f.0 / g, f.1 / g, f.2 / g)))
                .map(to_form)
                .ok_or_else(|| Error::Internal("primitive part".into()))
                .and_then(|pp| {
                    let pell = fundamental_solution(&pp.discriminant())?;
                    sigma_with(&pp, &pell)
                })
                .map(|s| zero_to_zero_one(&s));
            let want = BinString::from_bits(period.bits()[..minimal].to_vec());
            if root.as_ref().ok() != Some(&want) {
                ctx.fail(
                    t,
                    f,
                    "Denjoy period of the primitive part",
                    &want,
                    shown(&root),
                );
            }
        }
    })
}

fn show_seq<T: fmt::Display>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

/// Purely periodic regular expansion iff `x > 1` and `−1 < x̄ < 0`; purely
/// periodic negative expansion iff `x > 1` and `0 < x̄ < 1`.
fn lgz_check(t: &mut Tally, x: SmallSurd) {
    t.case();
    let above_one = surd_cmp(x.p, x.q, x.d, 1, 1).is_gt();
    let conj_in = |lo: i64, hi: i64| {
        surd_cmp(x.p, x.q, x.d, -1, lo).is_gt() && surd_cmp(x.p, x.q, x.d, -1, hi).is_lt()
    };
    let surd = x.to_surd();
    for (kind, name, predicted) in [
        (CfKind::Regular, "regular", above_one && conj_in(-1, 0)),
        (CfKind::Negative, "negative", above_one && conj_in(0, 1)),
    ] {
        let (pre, _) = x.periodic(kind);
        let by_state = pre == 0;
        let production = surd.periodic_expansion(kind).is_purely_periodic();
        if by_state != predicted || production != predicted {
            t.fail(
                Some(BigInt::from(x.d)),
                vec![x.p.into(), x.q.into()],
                format!("{name} expansion of {x} purely periodic"),
                predicted,
                format!("state recurrence {by_state}, library {production}"),
            );
        }
    }
}

/// Cross-engine agreement on random reduced surds, plus the
/// Lagrange–Galois–Zagier periodicity criterion.
fn lgz(b: &Bounds) -> Tally {
    let mut t = Tally::default();
    let mut rng = ChaCha8Rng::seed_from_u64(b.seed);
    let n = b.surd_terms;
    if b.delta_max >= 5 {
        let pick = |rng: &mut ChaCha8Rng, plus_side: bool| -> (i64, Tri) {
            loop {
                let d = rng.gen_range(5..=b.delta_max) as i64;
                if d % 4 > 1 || is_square_i(d) {
                    continue;
                }
                let forms: Vec<Tri> = if plus_side {
                    g_forms(d).into_iter().filter(|f| f.0 > 0).collect()
                } else {
                    z_forms(d)
                };
                if !forms.is_empty() {
                    return (d, forms[rng.gen_range(0..forms.len())]);
                }
            }
        };
        for _ in 0..b.surd_samples {
            // Z-reduced: (B + √Δ)/(2A) has a purely periodic negative expansion.
            let (d, f) = pick(&mut rng, false);
            let x = SmallSurd::new(f.1, 2 * f.0, d);
            lgz_check(&mut t, x);
            t.case();
            let (pre, period) = x.periodic(CfKind::Negative);
            let period: Vec<BigUint> = period.iter().map(|&a| BigUint::from(a as u128)).collect();
            let fail = |t: &mut Tally, what: &str, want: String, found: String| {
                t.fail(
                    Some(BigInt::from(d)),
                    key(f),
                    format!("{what} of {x}"),
                    want,
                    found,
                )
            };
            if pre != 0 {
                fail(
                    &mut t,
                    "negative expansion",
                    "purely periodic".into(),
                    format!("pre-period {pre}"),
                );
                continue;
            }
            let neg = x.terms(CfKind::Negative, n);
            let lib_neg = neg_cf_surd(&x.to_surd(), n).map(|s| show_seq(&s));
            if lib_neg.as_ref().ok() != Some(&show_seq(&neg)) {
                fail(&mut t, "neg_cf_surd", show_seq(&neg), shown(&lib_neg));
            }
            let reg = show_seq(&x.terms(CfKind::Regular, n));
            let converted = neg_to_reg_stream(&period, n).map(|s| show_seq(&s));
            if converted.as_ref().ok() != Some(&reg) {
                fail(&mut t, "neg_to_reg_stream", reg.clone(), shown(&converted));
            }
            let direct = reg_cf_surd(&x.to_surd(), n).map(|s| show_seq(&s));
            if direct.as_ref().ok() != Some(&reg) {
                fail(&mut t, "reg_cf_surd", reg.clone(), shown(&direct));
            }
            let interval =
                expand_surd_oracle(&x.to_surd(), CfKind::Regular, n).map(|s| show_seq(&s));
            if interval.as_ref().ok() != Some(&reg) {
                fail(&mut t, "interval regular expansion", reg, shown(&interval));
            }
        }
        for _ in 0..b.surd_samples {
            // G-reduced: (B + √Δ)/(2A) with A > 0 has a purely periodic
            // regular expansion.
            let (d, f) = pick(&mut rng, true);
            let x = SmallSurd::new(f.1, 2 * f.0, d);
            lgz_check(&mut t, x);
            t.case();
            let (pre, period) = x.periodic(CfKind::Regular);
            let fail = |t: &mut Tally, what: &str, want: String, found: String| {
                t.fail(
                    Some(BigInt::from(d)),
                    key(f),
                    format!("{what} of {x}"),
                    want,
                    found,
                )
            };
            if pre != 0 {
                fail(
                    &mut t,
                    "regular expansion",
                    "purely periodic".into(),
                    format!("pre-period {pre}"),
                );
                continue;
            }
            let quotients: Vec<BigUint> = period
                .iter()
                .cycle()
                .take(n.max(1))
                .map(|&a| BigUint::from(a as u128))
                .collect();
            let want: BinString = x
                .terms(CfKind::Denjoy, n)
                .into_iter()
                .map(|a| a == 1)
                .collect();
            let converted = reg_to_denjoy(&quotients)
                .map(|s| BinString::from_bits(s.bits()[..n.min(s.len())].to_vec()));
            if converted.as_ref().ok() != Some(&want) {
                fail(&mut t, "reg_to_denjoy", want.to_string(), shown(&converted));
            }
            let direct = denjoy_surd(&x.to_surd(), n);
            if direct.as_ref().ok() != Some(&want) {
                fail(&mut t, "denjoy_surd", want.to_string(), shown(&direct));
            }
            let interval = expand_surd_oracle(&x.to_surd(), CfKind::Denjoy, n)
                .map(|s| s.iter().map(|a| a.is_one()).collect::<BinString>());
            if interval.as_ref().ok() != Some(&want) {
                fail(
                    &mut t,
                    "interval Denjoy expansion",
                    want.to_string(),
                    shown(&interval),
                );
            }
        }
    }
    let d_top = b.delta_max.min(1000) as i64;
    if d_top >= 2 {
        let mut drawn = 0;
        while drawn < b.lgz_samples {
            let d = rng.gen_range(2..=d_top);
            let q = rng.gen_range(-30..=30i64);
            if q == 0 || is_square_i(d) {
                continue;
            }
            let p = rng.gen_range(-30..=30i64);
            drawn += 1;
            lgz_check(&mut t, SmallSurd::new(p, q, d));
        }
    }
    t
}

// ---------------------------------------------------------------------------
// String suites.

fn random_string(rng: &mut ChaCha8Rng, min_len: usize, max_len: usize, max_entry: u64) -> Vec<u64> {
    let l = rng.gen_range(min_len..=max_len);
    (0..l).map(|_| rng.gen_range(1..=max_entry)).collect()
}

/// Continuant as the numerator of the reduced fraction
/// `q₁ + 1/(q₂ + 1/(⋯ + 1/q_l))`, with the zero-end conventions.
fn cont_rational(s: &[u64]) -> BigInt {
    match s {
        [] => BigInt::one(),
        [0] => BigInt::zero(),
        [0, rest @ ..] => cont_rational(&rest[1..]),
        [.., 0] => cont_rational(&s[..s.len() - 2]),
        _ => {
            let mut x = BigRational::from_integer(s[s.len() - 1].into());
            for &q in s[..s.len() - 1].iter().rev() {
                x = BigRational::from_integer(q.into()) + x.recip();
            }
            x.numer().clone()
        }
    }
}

/// Evaluates continuants through the library and checks each value against
/// the rational fold.
struct ContProbe<'a> {
    t: &'a mut Tally,
    label: String,
    key: Vec<BigInt>,
}

impl ContProbe<'_> {
    fn c(&mut self, v: &[u64]) -> BigInt {
        let want = cont_rational(v);
        let entries: Vec<BigUint> = v.iter().map(|&q| BigUint::from(q)).collect();
        match continuant(&entries) {
            Ok(x) if BigInt::from(x.clone()) == want => want,
            found => {
                self.t.fail(
                    None,
                    self.key.clone(),
                    format!("[{}] in {}", show_string(v), self.label),
                    &want,
                    shown(&found),
                );
                want
            }
        }
    }

    /// `[q_i, …, q_j]` (1-based), with `j = i − 1` giving 1 and `j = i − 2`
    /// giving 0.
    fn seg(&mut self, q: &[u64], i: isize, j: isize) -> BigInt {
        if j == i - 1 {
            BigInt::one()
        } else if j == i - 2 {
            BigInt::zero()
        } else {
            self.c(&q[(i - 1) as usize..j as usize])
        }
    }

    fn claim(&mut self, name: &str, lhs: BigInt, rhs: BigInt) {
        if lhs != rhs {
            self.t.fail(
                None,
                self.key.clone(),
                format!("{name} on {}", self.label),
                rhs,
                lhs,
            );
        }
    }

    /// Matrix identity, symmetry, determinant, both recursions and both
    /// end-shift rules.
    fn general(&mut self, q: &[u64], shift: u64) {
        let l = q.len() as isize;
        let sign = if l % 2 == 0 { 1 } else { -1 };
        let whole = self.seg(q, 1, l);
        let head = self.seg(q, 1, l - 1);
        let tail = self.seg(q, 2, l);
        let inner = self.seg(q, 2, l - 1);
        let entries: Vec<BigUint> = q.iter().map(|&x| BigUint::from(x)).collect();
        let m = continuant_matrix(&entries).map(|row| row.map(BigInt::from));
        let expected = [[whole.clone(), head.clone()], [tail.clone(), inner.clone()]];
        for (r, row) in m.iter().enumerate() {
            for (c, entry) in row.iter().enumerate() {
                self.claim(
                    &format!("matrix entry ({r},{c})"),
                    entry.clone(),
                    expected[r][c].clone(),
                );
            }
        }
        let rev: Vec<u64> = q.iter().rev().copied().collect();
        let rev_val = self.c(&rev);
        self.claim("symmetry", rev_val, whole.clone());
        self.claim(
            "determinant",
            &whole * &inner - &head * &tail,
            BigInt::from(sign),
        );
        let third = self.seg(q, 3, l);
        self.claim(
            "left recursion",
            BigInt::from(q[0]) * &tail + third,
            whole.clone(),
        );
        let second_last = self.seg(q, 1, l - 2);
        self.claim(
            "right recursion",
            BigInt::from(q[q.len() - 1]) * &head + second_last,
            whole.clone(),
        );
        let mut bumped = q.to_vec();
        bumped[0] += shift;
        let bumped_val = self.c(&bumped);
        self.claim(
            "left end shift",
            bumped_val,
            &whole + BigInt::from(shift) * &tail,
        );
        let mut bumped = q.to_vec();
        *bumped.last_mut().unwrap() += shift;
        let bumped_val = self.c(&bumped);
        self.claim(
            "right end shift",
            bumped_val,
            &whole + BigInt::from(shift) * &head,
        );
    }
}

/// The continuant identities on random strings, including zero end entries.
fn continuant_identities(b: &Bounds) -> Tally {
    let mut t = Tally::default();
    let mut rng = ChaCha8Rng::seed_from_u64(b.seed ^ 0xc0);
    for _ in 0..b.random_samples {
        t.case();
        let q = random_string(&mut rng, 1, 12, 9);
        let shift = rng.gen_range(1..=9);
        let mut probe = ContProbe {
            label: show_string(&q),
            key: string_key(&q),
            t: &mut t,
        };
        probe.general(&q, shift);
        let l = q.len();

        // Absorbing a 1 at either end.
        let mut with_one = vec![1];
        with_one.extend_from_slice(&q);
        let mut absorbed = q.clone();
        absorbed[0] += 1;
        let (lhs, rhs) = (probe.c(&with_one), probe.c(&absorbed));
        probe.claim("leading 1 absorbed", lhs, rhs);
        let mut with_one = q.clone();
        with_one.push(1);
        let mut absorbed = q.clone();
        absorbed[l - 1] += 1;
        let (lhs, rhs) = (probe.c(&with_one), probe.c(&absorbed));
        probe.claim("trailing 1 absorbed", lhs, rhs);

        // Zero end entries: the conventions, and the general identities
        // with a zero at either end.
        let mut zero_first = vec![0];
        zero_first.extend_from_slice(&q);
        let (lhs, rhs) = (probe.c(&zero_first), probe.seg(&q, 2, l as isize));
        probe.claim("[0, q…] = [q₂…]", lhs, rhs);
        let mut zero_last = q.clone();
        zero_last.push(0);
        let (lhs, rhs) = (probe.c(&zero_last), probe.seg(&q, 1, l as isize - 1));
        probe.claim("[…q, 0] = […q_{l−1}]", lhs, rhs);
        let zero = probe.c(&[0]);
        probe.claim("[0] = 0", zero, BigInt::zero());
        probe.general(&zero_first, shift);
        probe.general(&zero_last, shift);

        // The modified determinant.
        if l >= 2 {
            let sign = BigInt::from(if l.is_multiple_of(2) { 1 } else { -1 });
            let mut first_down = q.clone();
            first_down[0] -= 1;
            let mut last_down = q.clone();
            last_down[l - 1] -= 1;
            let mut both = first_down.clone();
            both[l - 1] -= 1;
            let lhs = probe.c(&q) * probe.c(&both) - probe.c(&last_down) * probe.c(&first_down);
            probe.claim("modified determinant", lhs, sign);
        }
    }
    t
}

/// The σ-string rotation accompanying one Zagier step, from its three cases.
fn rotate_by_cases(bits: &[bool]) -> Vec<bool> {
    let ones: Vec<usize> = (0..bits.len()).filter(|&i| bits[i]).collect();
    // Leading 0, or a lone 1: rotate by one place.
    let k = if !bits[0] || ones.len() == 1 {
        1
    } else {
        // Bring the second 1 to the final position.
        ones[1] + 1
    };
    bits[k..].iter().chain(&bits[..k]).copied().collect()
}

/// `T_Z = pinch ∘ knead ∘ pinch`, and `sb ∘ T_Z` is the rotation of
/// `sb`-strings.
fn tz_knead(b: &Bounds) -> Tally {
    let mut t = Tally::default();
    let mut rng = ChaCha8Rng::seed_from_u64(b.seed ^ 0x72);
    for _ in 0..b.random_samples {
        t.case();
        let v = random_string(&mut rng, 2, 12, 9);
        let s = nat(&v);
        let tz = t_z(&s);
        let kneaded = pinch_both(&knead(&pinch_both(&s)));
        if tz.as_ref().ok() != Some(&kneaded) {
            t.fail(
                None,
                string_key(&v),
                format!("T_Z({s})"),
                &kneaded,
                shown(&tz),
            );
        }
        let rotated = sb(&s).map(|x| BinString::from_bits(rotate_by_cases(x.bits())));
        let via_tz = tz.and_then(|x| sb(&x));
        match (&rotated, &via_tz) {
            (Ok(a), Ok(b)) if a == b => {}
            _ => t.fail(
                None,
                string_key(&v),
                format!("sb(T_Z({s}))"),
                shown(&rotated),
                shown(&via_tz),
            ),
        }
    }
    t
}

// ---------------------------------------------------------------------------
// Interval expansion.

/// The first `n` partial quotients of `x` of the given kind, computed from
/// rational enclosures of `√Δ`. Whenever an enclosure is too wide to decide
/// a quotient, the precision doubles and the expansion restarts. Denjoy
/// quotients come back as 0 and 1.
pub fn expand_surd_oracle(x: &QuadraticSurd, kind: CfKind, n: usize) -> Result<Vec<BigInt>> {
    let mut bits = 32u32;
    loop {
        if let Some(out) = expand_at_precision(x, kind, n, bits) {
            return out;
        }
        bits = bits
            .checked_mul(2)
            .ok_or_else(|| Error::Internal("precision overflow".into()))?;
    }
}

fn floor_q(r: &BigRational) -> BigInt {
    r.floor().to_integer()
}

fn expand_at_precision(
    x: &QuadraticSurd,
    kind: CfKind,
    n: usize,
    bits: u32,
) -> Option<Result<Vec<BigInt>>> {
    let scale = BigInt::one() << bits;
    let root = (x.delta() << (2 * bits)).sqrt();
    let root_lo = BigRational::new(root.clone(), scale.clone());
    let root_hi = BigRational::new(root + 1, scale);
    let p = BigRational::from_integer(x.p().clone());
    let q = BigRational::from_integer(x.q().clone());
    let (a, b) = ((&p + root_lo) / &q, (&p + root_hi) / &q);
    let (mut lo, mut hi) = if a < b { (a, b) } else { (b, a) };

    let one = BigRational::one();
    let zero = BigRational::zero();
    let threshold = if kind == CfKind::Negative {
        &one
    } else {
        &zero
    };
    if &hi <= threshold {
        let need = if kind == CfKind::Negative {
            "> 1"
        } else {
            "> 0"
        };
        return Some(Err(domain(format!(
            "expansion needs a surd {need}, got {x}"
        ))));
    }
    if &lo <= threshold {
        return None;
    }

    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let a = match kind {
            CfKind::Regular => {
                let a = floor_q(&lo);
                (a == floor_q(&hi)).then_some(a)?
            }
            CfKind::Negative => {
                let a = floor_q(&lo) + 1;
                (a == floor_q(&hi) + 1).then_some(a)?
            }
            CfKind::Denjoy => {
                if lo >= one {
                    BigInt::one()
                } else if hi < one {
                    BigInt::zero()
                } else {
                    return None;
                }
            }
        };
        let ar = BigRational::from_integer(a.clone());
        let (near, far) = match kind {
            CfKind::Negative => (&ar - &hi, &ar - &lo),
            _ => (&lo - &ar, &hi - &ar),
        };
        if !near.is_positive() {
            return None;
        }
        (lo, hi) = (far.recip(), near.recip());
        out.push(a);
    }
    Some(Ok(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn suite_ids_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.id().parse::<Suite>().unwrap(), s);
        }
        assert!(verify("no_such_suite", 10).is_err());
    }

    #[test]
    fn empty_run_checks_nothing() {
        for s in Suite::ALL {
            let r = verify(s.id(), 0).unwrap();
            assert!(r.passed(), "{r}");
            assert_eq!(r.cases_checked, 0, "{}", s.id());
        }
    }

    #[test]
    fn enumeration_matches_library() {
        for d in discriminants(600) {
            let delta = BigInt::from(d);
            let z: Vec<Form> = z_forms(d as i64).into_iter().map(to_form).collect();
            let g: Vec<Form> = g_forms(d as i64).into_iter().map(to_form).collect();
            assert_eq!(
                z,
                crate::reduction::enumerate_z_reduced(&delta).unwrap(),
                "Δ={d}"
            );
            assert_eq!(
                g,
                crate::reduction::enumerate_g_reduced(&delta).unwrap(),
                "Δ={d}"
            );
        }
    }

    #[test]
    fn operators_on_examples() {
        assert_eq!(rz(17, (1, 5, 2)), (2, 5, 1));
        assert_eq!(rz(17, (2, 7, 4)), (1, 5, 2));
        assert_eq!(rg(17, (1, 3, -2)), (-2, 3, 1));
        assert_eq!(rg(17, (-2, 3, 1)), (2, 1, -2));
    }

    #[test]
    fn continuant_oracles_agree() {
        for v in all_strings(0..=5, 4) {
            assert_eq!(BigInt::from(cont_small(&v)), cont_rational(&v), "{v:?}");
        }
        assert_eq!(cont_small(&[0, 3, 1, 1]), 2);
        assert_eq!(cont_small(&[1, 3, 1, 0]), 4);
        assert_eq!(cont_small(&[0, 0]), 1);
        assert_eq!(cont_rational(&[0]), BigInt::zero());
    }

    #[test]
    fn interval_expansion_examples() {
        let golden = QuadraticSurd::new(1, 2, 5).unwrap();
        assert_eq!(
            expand_surd_oracle(&golden, CfKind::Regular, 5).unwrap(),
            big(&[1, 1, 1, 1, 1])
        );
        let x = QuadraticSurd::new(3, 2, 17).unwrap();
        let d = expand_surd_oracle(&x, CfKind::Denjoy, 7).unwrap();
        assert_eq!(d, big(&[1, 0, 1, 0, 1, 1, 1]));
        assert!(expand_surd_oracle(&x, CfKind::Negative, 0)
            .unwrap()
            .is_empty());
        let neg = expand_surd_oracle(&QuadraticSurd::new(5, 2, 17).unwrap(), CfKind::Negative, 5);
        assert_eq!(neg.unwrap(), big(&[5, 3, 2, 2, 3]));
        let below = QuadraticSurd::new(-5, 2, 17).unwrap();
        assert!(expand_surd_oracle(&below, CfKind::Regular, 3).is_err());
    }

    #[test]
    fn interval_expansion_matches_engines() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let d = rng.gen_range(2..500i64);
            let q = rng.gen_range(1..40i64);
            let p = rng.gen_range(-20..40i64);
            let Ok(x) = QuadraticSurd::new(p, q, d) else {
                continue;
            };
            for kind in [CfKind::Regular, CfKind::Negative, CfKind::Denjoy] {
                let lib = match kind {
                    CfKind::Regular => {
                        reg_cf_surd(&x, 20).map(|v| v.into_iter().map(BigInt::from).collect())
                    }
                    CfKind::Negative => {
                        neg_cf_surd(&x, 20).map(|v| v.iter().cloned().map(BigInt::from).collect())
                    }
                    CfKind::Denjoy => denjoy_surd(&x, 20).map(|v| {
                        v.bits()
                            .iter()
                            .map(|&b| BigInt::from(b as u8))
                            .collect::<Vec<_>>()
                    }),
                };
                let oracle = expand_surd_oracle(&x, kind, 20);
                assert_eq!(lib.is_ok(), oracle.is_ok(), "{x} {kind:?}");
                if let (Ok(a), Ok(b)) = (lib, oracle) {
                    assert_eq!(a, b, "{x} {kind:?}");
                }
            }
        }
    }

    #[test]
    fn small_surd_matches_library_steps() {
        for (p, q, d) in [(3, 2, 17), (-7, 3, 13), (5, -4, 41), (0, 1, 2)] {
            let x = SmallSurd::new(p, q, d);
            let lib = x.to_surd();
            for kind in [CfKind::Regular, CfKind::Negative] {
                let ours: Vec<BigInt> = x.terms(kind, 15).into_iter().map(BigInt::from).collect();
                assert_eq!(ours, lib.terms(kind, 15), "{x} {kind:?}");
            }
        }
    }

    #[test]
    fn pell_window_check() {
        let sol = fundamental_solution(&BigInt::from(61)).unwrap();
        assert_eq!(pell_minimal_in_window(61, &sol, 100), Ok(true));
        assert_eq!(pell_minimal_in_window(61, &sol, 3), Ok(false));
        let wrong = PellSolution {
            t: BigInt::from(4),
            u: BigInt::from(2),
            epsilon: PellSign::Minus,
        };
        assert!(pell_minimal_in_window(5, &wrong, 100).is_err());
    }

    #[test]
    fn necklace_counts() {
        // Primitive binary necklaces of length n number (1/n)Σ μ(d)2^{n/d};
        // dropping the all-zero one for n = 1 leaves 1, 1, 2, 3, 6, 9.
        let counts: Vec<usize> = (1..=6)
            .map(|l| primitive_necklaces(l).len() - primitive_necklaces(l - 1).len())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 6, 9]);
    }

    #[test]
    fn suites_pass_at_small_bounds() {
        let mut b = Bounds::from_delta_max(200);
        b.string_len_max = 5;
        b.string_entry_max = 4;
        b.necklace_len_max = 7;
        b.random_samples = 500;
        b.surd_samples = 20;
        b.lgz_samples = 200;
        for r in verify_all(&b) {
            assert!(r.passed(), "{r}\n{:#?}", r.failures);
            assert!(r.cases_checked > 0, "{}", r.theorem_id);
        }
    }

    #[test]
    fn rotation_example_bound() {
        let r = verify("rotation", 500).unwrap();
        assert!(r.passed(), "{r}");
        let forms: usize = discriminants(500)
            .into_iter()
            .map(|d| z_forms(d as i64).len())
            .sum();
        assert!(r.cases_checked as usize >= forms);
        assert!(verify("weightparity", 500).unwrap().passed());
        let empty = verify("formfrombeads", 0).unwrap();
        assert!(empty.passed() && empty.cases_checked == 0);
    }

    #[test]
    fn failures_report_the_minimal_case() {
        let mut t = Tally::default();
        for d in [30, 12, 17] {
            t.fail(Some(BigInt::from(d)), big(&[2, 1]), "x", "a", "b");
            t.fail(Some(BigInt::from(d)), big(&[1, 9]), "y", "a", "b");
        }
        t.fail(None, Vec::new(), "string", "a", "b");
        let r = t.into_report(Suite::Rotation, &Bounds::from_delta_max(40));
        assert_eq!(r.failures_total, 7);
        assert_eq!(r.failures[0].delta, Some(BigInt::from(12)));
        assert_eq!(r.failures[0].input, "y");
        assert_eq!(r.failures.last().unwrap().delta, None);
        assert!(!r.passed());
    }
}
