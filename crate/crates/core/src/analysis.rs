//! The sets Z, Z⊥, W and C of a graph, the distance search built on them,
//! multi-codeword verification and the multi-star LDPC embedding.
//!
//! For a graph with adjacency `A` and target distance `d`:
//!
//! * `Z(d) = {k : weight(k ∨ A·k) ≤ d-1}`;
//! * `Z⊥(d)` is the orthogonal complement of `span Z(d)`;
//! * `W(d) = {A·m + l : weight(m ∨ l) ≤ d-1}`;
//! * `C(d) = Z⊥(d) \ W(d)`.
//!
//! `C(d)` is nonempty iff |G⟩ lies in a two-dimensional code of distance
//! `d` spanned by |G⟩ and Z^h|G⟩ for `h ∈ C(d)`.

use std::cmp::Ordering;
use std::ops::ControlFlow;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{count_up_to_weight, span_iter, BitString, EchelonBasis, Gf2Matrix, DEFAULT_SPAN_CAP};
use crate::graphs::{gen_family, FamilySpec, Graph};
use crate::scalar::Scalar;

pub const DEFAULT_MAX_MEMBERS: usize = 1024;

/// Default cap on enumerated candidates per query (about 1.3e8).
pub const DEFAULT_MAX_CANDIDATES: u64 = 1 << 27;

/// Span vectors filtered per parallel batch in [`SetQuery::c_set`].
const SPAN_CHUNK: usize = 2048;

#[derive(Clone, Debug, Serialize)]
pub struct Caps {
    /// Largest weight class an enumeration may visit; `None` means `d - 1`.
    pub max_weight: Option<usize>,
    pub max_span_dim: usize,
    pub max_members: usize,
    pub max_candidates: u64,
    pub budget_ms: Option<u64>,
    #[serde(skip)]
    pub deadline: Option<Instant>,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_weight: None,
            max_span_dim: DEFAULT_SPAN_CAP,
            max_members: DEFAULT_MAX_MEMBERS,
            max_candidates: DEFAULT_MAX_CANDIDATES,
            budget_ms: None,
            deadline: None,
        }
    }
}

impl Caps {
    pub fn with_budget_ms(mut self, ms: u64) -> Self {
        self.budget_ms = Some(ms);
        self.deadline = Some(Instant::now() + Duration::from_millis(ms));
        self
    }

    /// Reads `TQO_BUDGET_MS` when set.
    pub fn with_env_budget(self) -> Self {
        match std::env::var("TQO_BUDGET_MS").ok().and_then(|v| v.parse().ok()) {
            Some(ms) => self.with_budget_ms(ms),
            None => self,
        }
    }

    fn check_weight(&self, w: usize) -> Result<()> {
        match self.max_weight {
            Some(cap) if w > cap => Err(Error::Budget(format!("weight class {w} exceeds --max-weight {cap}"))),
            _ => Ok(()),
        }
    }

    fn check_deadline(&self) -> Result<()> {
        match self.deadline {
            Some(t) if Instant::now() > t => Err(Error::Budget("time budget exhausted".into())),
            _ => Ok(()),
        }
    }
}

/// Shared candidate counter.
#[derive(Debug)]
struct Meter<'a> {
    used: AtomicU64,
    caps: &'a Caps,
}

impl<'a> Meter<'a> {
    fn new(caps: &'a Caps) -> Self {
        Meter {
            used: AtomicU64::new(0),
            caps,
        }
    }

    fn charge(&self, n: u64) -> Result<()> {
        let total = self.used.fetch_add(n, AtomicOrdering::Relaxed) + n;
        if total > self.caps.max_candidates {
            return Err(Error::Budget(format!(
                "enumeration exceeded {} candidates",
                self.caps.max_candidates
            )));
        }
        self.caps.check_deadline()
    }

    fn used(&self) -> u64 {
        self.used.load(AtomicOrdering::Relaxed)
    }
}

const CHARGE_BATCH: u64 = 4096;

/// Visits every `m` with weight ≤ `max_w`, lighter classes first and each
/// class in lexicographic order of support, passing `(m, Σ_{i∈m} cols[i])`.
fn visit_up_to_weight<B>(
    n: usize,
    max_w: usize,
    cols: &[BitString],
    meter: &Meter<'_>,
    mut f: impl FnMut(&BitString, &BitString) -> ControlFlow<B>,
) -> Result<Option<B>> {
    struct State<'c, F> {
        n: usize,
        cols: &'c [BitString],
        m: BitString,
        acc: BitString,
        pending: u64,
        f: F,
    }

    fn dfs<B, F: FnMut(&BitString, &BitString) -> ControlFlow<B>>(
        st: &mut State<'_, F>,
        meter: &Meter<'_>,
        start: usize,
        remaining: usize,
    ) -> Result<ControlFlow<B>> {
        if remaining == 0 {
            st.pending += 1;
            if st.pending >= CHARGE_BATCH {
                meter.charge(st.pending)?;
                st.pending = 0;
            }
            return Ok((st.f)(&st.m, &st.acc));
        }
        for i in start..=st.n - remaining {
            st.m.set(i, true);
            st.acc.xor_assign(&st.cols[i]);
            let r = dfs(st, meter, i + 1, remaining - 1);
            st.m.set(i, false);
            st.acc.xor_assign(&st.cols[i]);
            match r? {
                ControlFlow::Continue(()) => {}
                brk => return Ok(brk),
            }
        }
        Ok(ControlFlow::Continue(()))
    }

    let len = cols.first().map_or(n, BitString::len);
    let mut st = State {
        n,
        cols,
        m: BitString::zeros(n),
        acc: BitString::zeros(len),
        pending: 0,
        f: &mut f,
    };
    for w in 0..=max_w.min(n) {
        if let ControlFlow::Break(b) = dfs(&mut st, meter, 0, w)? {
            meter.charge(st.pending)?;
            return Ok(Some(b));
        }
    }
    meter.charge(st.pending)?;
    Ok(None)
}

/// σ(A, k) = Σ_{i<j} k_i k_j A_ij mod 2.
pub fn sigma(a: &Gf2Matrix, k: &BitString) -> Result<bool> {
    if !a.is_square() || a.n_cols() != k.len() {
        return Err(Error::DimensionMismatch(format!(
            "adjacency {}x{} with vector of length {}",
            a.n_rows(),
            a.n_cols(),
            k.len()
        )));
    }
    if !a.is_symmetric() {
        return Err(Error::InvalidParameters("adjacency matrix must be symmetric".into()));
    }
    Ok(sigma_unchecked(a, k))
}

fn sigma_unchecked(a: &Gf2Matrix, k: &BitString) -> bool {
    let mut acc = false;
    for i in k.ones_iter() {
        for j in a.row(i).ones_iter() {
            if j > i && k.get(j) {
                acc ^= true;
            }
        }
    }
    acc
}

/// Closed form of ⟨h|X^k Z^l|g⟩_G: `(-1)^{h·k + σ(A,k)}` when
/// `A·k + l = h + g`, else 0.
pub fn graph_basis_inner_analytic(
    a: &Gf2Matrix,
    h: &BitString,
    g: &BitString,
    k: &BitString,
    l: &BitString,
) -> Result<i8> {
    let n = a.n_cols();
    for v in [h, g, k, l] {
        if v.len() != n {
            return Err(Error::LengthMismatch { left: n, right: v.len() });
        }
    }
    let s = sigma(a, k)?;
    let mut lhs = a.mat_vec_unchecked(k);
    lhs.xor_assign(l);
    lhs.xor_assign(h);
    lhs.xor_assign(g);
    if !lhs.is_zero() {
        return Ok(0);
    }
    Ok(if h.dot_unchecked(k) ^ s { -1 } else { 1 })
}

/// Membership queries for one graph at one distance.
#[derive(Debug)]
pub struct SetQuery<'g> {
    graph: &'g Graph,
    a: Gf2Matrix,
    d: usize,
    caps: Caps,
    z_basis: OnceLock<Vec<BitString>>,
    zperp: OnceLock<Vec<BitString>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WWitness {
    pub m: BitString,
    pub l: BitString,
}

impl<'g> SetQuery<'g> {
    pub fn new(graph: &'g Graph, d: usize, caps: Caps) -> Result<Self> {
        if d < 1 || d > graph.n() + 1 {
            return Err(Error::InvalidParameters(format!(
                "distance {d} outside 1..={}",
                graph.n() + 1
            )));
        }
        Ok(SetQuery {
            graph,
            a: graph.adjacency(),
            d,
            caps,
            z_basis: OnceLock::new(),
            zperp: OnceLock::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    pub fn caps(&self) -> &Caps {
        &self.caps
    }

    fn check_len(&self, v: &BitString) -> Result<()> {
        if v.len() != self.n() {
            return Err(Error::LengthMismatch {
                left: self.n(),
                right: v.len(),
            });
        }
        Ok(())
    }

    /// Admission check for an enumeration over weights `0..=d-1`.
    fn admit(&self, what: &str) -> Result<()> {
        let w = self.d - 1;
        self.caps.check_weight(w)?;
        let count = count_up_to_weight(self.n(), w);
        if count > self.caps.max_candidates as u128 {
            return Err(Error::Budget(format!(
                "{what} would visit {count} candidates (weight ≤ {w} on {} bits), cap {}",
                self.n(),
                self.caps.max_candidates
            )));
        }
        Ok(())
    }

    pub fn in_z(&self, k: &BitString) -> Result<bool> {
        self.check_len(k)?;
        Ok(k.or_weight(&self.a.mat_vec_unchecked(k)) < self.d)
    }

    /// Independent generating set of span Z(d), in discovery order.
    pub fn z_span_basis(&self) -> Result<&[BitString]> {
        if let Some(b) = self.z_basis.get() {
            return Ok(b);
        }
        self.admit("Z enumeration")?;
        let meter = Meter::new(&self.caps);
        let n = self.n();
        let bound = self.d;
        let mut echelon = EchelonBasis::new(n);
        let mut found = Vec::new();
        visit_up_to_weight(n, self.d - 1, self.a.rows(), &meter, |k, ak| {
            if k.or_weight(ak) < bound && echelon.insert(k) {
                found.push(k.clone());
                if echelon.is_full() {
                    return ControlFlow::Break(());
                }
            }
            ControlFlow::Continue(())
        })?;
        Ok(self.z_basis.get_or_init(|| found))
    }

    pub fn zperp_basis(&self) -> Result<&[BitString]> {
        if let Some(b) = self.zperp.get() {
            return Ok(b);
        }
        let rows = self.z_span_basis()?.to_vec();
        let m = Gf2Matrix::from_rows_with_cols(rows, self.n())?;
        Ok(self.zperp.get_or_init(|| m.kernel_basis()))
    }

    /// A vector of span Z(d) with odd overlap, when `h ∉ Z⊥`.
    pub fn zperp_violation(&self, h: &BitString) -> Result<Option<BitString>> {
        self.check_len(h)?;
        Ok(self.z_span_basis()?.iter().find(|k| k.dot_unchecked(h)).cloned())
    }

    pub fn in_zperp(&self, h: &BitString) -> Result<bool> {
        Ok(self.zperp_violation(h)?.is_none())
    }

    /// `(m, l)` with `h = A·m + l` and weight(m ∨ l) ≤ d-1, if any.
    pub fn w_witness(&self, h: &BitString) -> Result<Option<WWitness>> {
        self.check_len(h)?;
        self.admit("W search")?;
        let meter = Meter::new(&self.caps);
        self.w_witness_metered(h, &meter)
    }

    fn w_witness_metered(&self, h: &BitString, meter: &Meter<'_>) -> Result<Option<WWitness>> {
        let bound = self.d;
        visit_up_to_weight(self.n(), self.d - 1, self.a.rows(), meter, |m, am| {
            if h.xor_or_weight(am, m) < bound {
                let mut l = h.clone();
                l.xor_assign(am);
                ControlFlow::Break(WWitness { m: m.clone(), l })
            } else {
                ControlFlow::Continue(())
            }
        })
    }

    pub fn in_w(&self, h: &BitString) -> Result<bool> {
        Ok(self.w_witness(h)?.is_some())
    }

    pub fn in_c(&self, h: &BitString) -> Result<bool> {
        Ok(!h.is_zero() && self.in_zperp(h)? && !self.in_w(h)?)
    }

    /// Members of C(d) spanned by the first `max_span_dim` basis vectors of
    /// Z⊥, keeping at most `max_members`.
    pub fn c_set(&self) -> Result<CSetResult> {
        self.c_set_limited(self.caps.max_members)
    }

    /// One member of C(d) or proof of emptiness.
    pub fn c_first(&self) -> Result<Option<BitString>> {
        let r = self.c_set_limited(1)?;
        if let Some(h) = r.members.into_iter().next() {
            return Ok(Some(h));
        }
        if !r.exhaustive {
            return Err(Error::SubspaceTooLarge {
                dim: r.zperp_dim,
                cap: self.caps.max_span_dim,
            });
        }
        Ok(None)
    }

    /// Canonical-least member of C(d), walking all of Z⊥.
    pub fn c_least(&self) -> Result<Option<BitString>> {
        let r = self.c_set_limited(usize::MAX)?;
        if !r.exhaustive {
            return Err(Error::SubspaceTooLarge {
                dim: r.zperp_dim,
                cap: self.caps.max_span_dim,
            });
        }
        Ok(r.members.into_iter().next())
    }

    fn c_set_limited(&self, max_members: usize) -> Result<CSetResult> {
        let zperp = self.zperp_basis()?.to_vec();
        let z_basis = self.z_span_basis()?.to_vec();
        let dim = zperp.len();
        let walk_dim = dim.min(self.caps.max_span_dim).min(63);
        let walk = span_iter(&zperp[..walk_dim], self.n(), walk_dim)?;
        self.admit("W search")?;
        let meter = Meter::new(&self.caps);
        let mut members = Vec::new();
        let mut truncated = false;
        let mut walked = 0u64;
        let mut it = walk.skip(1).peekable();
        while it.peek().is_some() && !truncated {
            let chunk: Vec<BitString> = it.by_ref().take(SPAN_CHUNK).collect();
            walked += chunk.len() as u64;
            let hits: Vec<Result<Option<BitString>>> = chunk
                .into_par_iter()
                .map(|h| match self.w_witness_metered(&h, &meter)? {
                    Some(_) => Ok(None),
                    None => Ok(Some(h)),
                })
                .collect();
            for hit in hits {
                if let Some(h) = hit? {
                    if members.len() == max_members {
                        truncated = true;
                        break;
                    }
                    members.push(h);
                }
            }
            if members.len() >= max_members && it.peek().is_some() {
                truncated = true;
            }
        }
        members.sort_by(BitString::canonical_cmp);
        Ok(CSetResult {
            d: self.d,
            n: self.n(),
            z_basis,
            zperp_dim: dim,
            zperp_basis: zperp,
            exhaustive: walk_dim == dim && !truncated,
            truncated,
            span_walked: walked + 1,
            candidates: meter.used(),
            members,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CSetResult {
    pub d: usize,
    pub n: usize,
    pub z_basis: Vec<BitString>,
    pub zperp_basis: Vec<BitString>,
    pub zperp_dim: usize,
    /// Sorted by weight, then text.
    pub members: Vec<BitString>,
    /// True when every vector of Z⊥ was examined and no member was dropped.
    pub exhaustive: bool,
    /// True when `max_members` cut the list short.
    pub truncated: bool,
    pub span_walked: u64,
    pub candidates: u64,
}

impl CSetResult {
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DmaxStrategy {
    Incremental,
    Bisection,
}

impl std::str::FromStr for DmaxStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "incremental" => Ok(DmaxStrategy::Incremental),
            "bisection" => Ok(DmaxStrategy::Bisection),
            other => Err(Error::Parse(format!("unknown strategy {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DmaxProbe {
    pub d: usize,
    /// "nonempty", "empty" or "budget".
    pub outcome: String,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DmaxResult {
    pub strategy: DmaxStrategy,
    /// Exact d_max when the search completed.
    pub value: Option<usize>,
    /// `lower ≤ d_max ≤ upper`.
    pub lower: usize,
    pub upper: usize,
    pub certificate: Option<BitString>,
    /// Whether the certificate is the canonical-least member.
    pub certificate_canonical: bool,
    pub probes: Vec<DmaxProbe>,
}

impl DmaxResult {
    pub fn is_exact(&self) -> bool {
        self.value.is_some()
    }
}

enum Probe {
    Nonempty(BitString),
    Empty,
}

fn probe(g: &Graph, d: usize, caps: &Caps) -> Result<Probe> {
    let q = SetQuery::new(g, d, caps.clone())?;
    Ok(match q.c_first()? {
        Some(h) => Probe::Nonempty(h),
        None => Probe::Empty,
    })
}

fn record(probes: &mut Vec<DmaxProbe>, d: usize, r: &Result<Probe>) {
    let (outcome, detail) = match r {
        Ok(Probe::Nonempty(h)) => ("nonempty", Some(h.to_string())),
        Ok(Probe::Empty) => ("empty", None),
        Err(e) => ("budget", Some(e.to_string())),
    };
    probes.push(DmaxProbe {
        d,
        outcome: outcome.into(),
        detail,
    });
}

/// Largest `d` with C(d) nonempty.
///
/// Budget failures do not abort the search: the result then carries the
/// bracket established so far and `value = None`. Errors other than budget
/// exhaustion propagate.
pub fn d_max(g: &Graph, strategy: DmaxStrategy, caps: &Caps) -> Result<DmaxResult> {
    let n = g.n();
    if n == 0 {
        return Err(Error::InvalidParameters("graph has no vertices".into()));
    }
    let mut probes = Vec::new();
    // C(1) is every nonzero string, C(n+1) is empty.
    let mut lo = 1usize;
    let mut hi = n + 1;
    let mut witness = BitString::basis(n, 0);
    let mut exact = true;
    match strategy {
        DmaxStrategy::Incremental => {
            for d in 2..=n + 1 {
                let r = probe(g, d, caps);
                record(&mut probes, d, &r);
                match r {
                    Ok(Probe::Nonempty(h)) => {
                        lo = d;
                        witness = h;
                    }
                    Ok(Probe::Empty) => {
                        hi = d;
                        break;
                    }
                    Err(e) if e.is_budget() => {
                        exact = false;
                        break;
                    }
                    Err(e) => return Err(e),
                }
            }
        }
        DmaxStrategy::Bisection => {
            while hi - lo > 1 {
                let mid = lo + (hi - lo) / 2;
                let r = probe(g, mid, caps);
                record(&mut probes, mid, &r);
                match r {
                    Ok(Probe::Nonempty(h)) => {
                        lo = mid;
                        witness = h;
                    }
                    Ok(Probe::Empty) => hi = mid,
                    Err(e) if e.is_budget() => {
                        exact = false;
                        break;
                    }
                    Err(e) => return Err(e),
                }
            }
        }
    }
    let (certificate, canonical) = if lo == 1 {
        (Some(BitString::basis(n, n - 1)), true)
    } else {
        match SetQuery::new(g, lo, caps.clone())?.c_least() {
            Ok(Some(h)) => (Some(h), true),
            Ok(None) => (Some(witness), false),
            Err(e) if e.is_budget() => (Some(witness), false),
            Err(e) => return Err(e),
        }
    };
    Ok(DmaxResult {
        strategy,
        value: exact.then_some(lo),
        lower: lo,
        upper: hi - 1,
        certificate,
        certificate_canonical: canonical,
        probes,
    })
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum CodewordFailure {
    /// `hs[index]` has odd overlap with `z` ∈ Z(d).
    NotInZperp { index: usize, h: BitString, z: BitString },
    /// Codewords `i` and `j` (0 is |G⟩ itself, `t` is `hs[t-1]`) differ by
    /// an element of W.
    InW {
        i: usize,
        j: usize,
        difference: BitString,
        m: BitString,
        l: BitString,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct CodewordVerdict {
    pub pass: bool,
    pub d: usize,
    pub n_codewords: usize,
    pub failure: Option<CodewordFailure>,
}

/// Checks that {|G⟩} ∪ {Z^h|G⟩ : h ∈ hs} spans a code of distance `d`:
/// every `h ∈ Z⊥(d)` and every pairwise difference, including against
/// `0^n`, lies outside W(d).
pub fn verify_codewords(g: &Graph, d: usize, hs: &[BitString], caps: &Caps) -> Result<CodewordVerdict> {
    let q = SetQuery::new(g, d, caps.clone())?;
    for (t, h) in hs.iter().enumerate() {
        q.check_len(h)?;
        if h.is_zero() {
            return Err(Error::InvalidParameters(format!("codeword label {t} is 0^n")));
        }
        if hs[..t].contains(h) {
            return Err(Error::InvalidParameters(format!("codeword label {t} repeats {h}")));
        }
    }
    let verdict = |failure| CodewordVerdict {
        pass: false,
        d,
        n_codewords: hs.len() + 1,
        failure: Some(failure),
    };
    for (index, h) in hs.iter().enumerate() {
        if let Some(z) = q.zperp_violation(h)? {
            return Ok(verdict(CodewordFailure::NotInZperp { index, h: h.clone(), z }));
        }
    }
    let mut labels = vec![BitString::zeros(g.n())];
    labels.extend(hs.iter().cloned());
    for i in 0..labels.len() {
        for j in i + 1..labels.len() {
            let diff = labels[i].xor(&labels[j])?;
            if let Some(w) = q.w_witness(&diff)? {
                return Ok(verdict(CodewordFailure::InW {
                    i,
                    j,
                    difference: diff,
                    m: w.m,
                    l: w.l,
                }));
            }
        }
    }
    Ok(CodewordVerdict {
        pass: true,
        d,
        n_codewords: labels.len(),
        failure: None,
    })
}

/// Largest message length accepted by exhaustive classical routines.
pub const MAX_CLASSICAL_DIM: usize = 24;

/// Binary linear code given by a full-rank generator matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassicalCode {
    generator: Vec<BitString>,
    q: usize,
}

impl ClassicalCode {
    pub fn new(generator: Vec<BitString>) -> Result<Self> {
        let q = generator
            .first()
            .map(BitString::len)
            .ok_or_else(|| Error::InvalidParameters("generator matrix has no rows".into()))?;
        let m = Gf2Matrix::from_rows(generator.clone())?;
        if m.rank() != generator.len() {
            return Err(Error::InvalidParameters("generator matrix is not full row rank".into()));
        }
        Ok(ClassicalCode { generator, q })
    }

    /// One generator row per line, `'0'`/`'1'` characters; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let rows = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<BitString>>>()?;
        ClassicalCode::new(rows)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        ClassicalCode::parse(&text)
    }

    /// Block length.
    pub fn q(&self) -> usize {
        self.q
    }

    /// Number of message bits.
    pub fn k(&self) -> usize {
        self.generator.len()
    }

    pub fn generator(&self) -> &[BitString] {
        &self.generator
    }

    /// Codeword of message `u`, bit `i` of `u` selecting row `i`.
    pub fn encode(&self, u: u64) -> BitString {
        let mut c = BitString::zeros(self.q);
        for (i, row) in self.generator.iter().enumerate() {
            if u >> i & 1 == 1 {
                c.xor_assign(row);
            }
        }
        c
    }

    /// All 2^k codewords in message order.
    pub fn codewords(&self) -> Result<Vec<BitString>> {
        self.check_dim()?;
        Ok((0..1u64 << self.k()).map(|u| self.encode(u)).collect())
    }

    fn check_dim(&self) -> Result<()> {
        if self.k() > MAX_CLASSICAL_DIM {
            return Err(Error::Budget(format!(
                "code dimension {} exceeds {MAX_CLASSICAL_DIM}",
                self.k()
            )));
        }
        Ok(())
    }
}

/// Minimum nonzero codeword weight, by Gray-code walk of all messages.
pub fn classical_min_distance(code: &ClassicalCode) -> Result<usize> {
    code.check_dim()?;
    let walk = span_iter(code.generator(), code.q(), MAX_CLASSICAL_DIM)?;
    Ok(walk.skip(1).map(|c| c.weight()).min().expect("full-rank generator has a nonzero row"))
}

/// Multi-star labels `r(h)`: classical bit `i` placed on hub `i·m`. One
/// label per message, in message order.
pub fn ldpc_embed(code: &ClassicalCode, m: usize) -> Result<Vec<BitString>> {
    let dc = classical_min_distance(code)?;
    if dc < m {
        return Err(Error::InvalidParameters(format!(
            "classical distance {dc} is below m = {m}"
        )));
    }
    Ok(code.codewords()?.iter().map(|h| embed_label(h, m)).collect())
}

pub fn embed_label(h: &BitString, m: usize) -> BitString {
    BitString::from_indices(h.len() * m, h.ones_iter().map(|i| i * m))
}

/// `y ≈ prefactor · x^exponent` by least squares in log-log space.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct PowerFit<T> {
    pub exponent: T,
    pub prefactor: T,
    pub points: usize,
}

pub fn power_law_fit<T: Scalar>(points: &[(T, T)]) -> Option<PowerFit<T>> {
    let logs: Vec<(T, T)> = points
        .iter()
        .filter(|(x, y)| *x > T::zero() && *y > T::zero())
        .map(|&(x, y)| (x.ln(), y.ln()))
        .collect();
    let len = T::from_f64(logs.len() as f64);
    if logs.len() < 2 {
        return None;
    }
    let mx = logs.iter().fold(T::zero(), |a, p| a + p.0) / len;
    let my = logs.iter().fold(T::zero(), |a, p| a + p.1) / len;
    let sxx = logs.iter().fold(T::zero(), |a, p| a + (p.0 - mx) * (p.0 - mx));
    let sxy = logs.iter().fold(T::zero(), |a, p| a + (p.0 - mx) * (p.1 - my));
    if sxx <= T::epsilon() {
        return None;
    }
    let slope = sxy / sxx;
    Some(PowerFit {
        exponent: slope,
        prefactor: (my - slope * mx).exp(),
        points: logs.len(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanRow {
    pub size: usize,
    pub graph: String,
    pub n: usize,
    pub max_degree: usize,
    pub d_max: Option<usize>,
    pub lower: usize,
    pub upper: usize,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub family: String,
    pub rows: Vec<ScanRow>,
    /// Fit of log d_max against log n over rows with exact values.
    pub fit: Option<PowerFit<f64>>,
}

/// d_max across sizes of one family. Descriptive only.
pub fn family_scan(template: &FamilySpec, sizes: &[usize], strategy: DmaxStrategy, caps: &Caps) -> ScanReport {
    let mut rows = Vec::new();
    for &size in sizes {
        let spec = template.with_size(size);
        let row = match gen_family(&spec) {
            Err(e) => ScanRow {
                size,
                graph: spec.label(),
                n: 0,
                max_degree: 0,
                d_max: None,
                lower: 0,
                upper: 0,
                error: Some(e.to_string()),
            },
            Ok(g) => {
                let (d_max, lower, upper, error) = match d_max(&g, strategy, caps) {
                    Ok(r) => (r.value, r.lower, r.upper, None),
                    Err(e) => (None, 0, g.n(), Some(e.to_string())),
                };
                ScanRow {
                    size,
                    graph: g.name().to_string(),
                    n: g.n(),
                    max_degree: g.max_degree(),
                    d_max,
                    lower,
                    upper,
                    error,
                }
            }
        };
        rows.push(row);
    }
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter_map(|r| r.d_max.map(|d| (r.n as f64, d as f64)))
        .collect();
    ScanReport {
        family: template.label(),
        fit: power_law_fit(&pts),
        rows,
    }
}

/// Canonical order of bitstrings, for sorting reports.
pub fn canonical_order(a: &BitString, b: &BitString) -> Ordering {
    a.canonical_cmp(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{complete, lattice, multi_star, star, toric};

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    fn q(g: &Graph, d: usize) -> SetQuery<'_> {
        SetQuery::new(g, d, Caps::default()).unwrap()
    }

    #[test]
    fn sigma_examples() {
        let k3 = complete(3).unwrap().adjacency();
        assert!(!sigma(&k3, &bs("000")).unwrap());
        assert!(sigma(&k3, &bs("110")).unwrap());
        for i in 0..3 {
            assert!(!sigma(&k3, &BitString::basis(3, i)).unwrap());
        }
        assert!(sigma(&k3, &bs("11")).is_err());
    }

    #[test]
    fn analytic_element_examples() {
        let a = star(4).unwrap().adjacency();
        let z = BitString::zeros(4);
        assert_eq!(graph_basis_inner_analytic(&a, &z, &z, &z, &z).unwrap(), 1);
        assert_eq!(graph_basis_inner_analytic(&a, &z, &z, &z, &bs("1000")).unwrap(), 0);
    }

    #[test]
    fn z_membership_examples() {
        let s = star(4).unwrap();
        assert!(q(&s, 1).in_z(&BitString::zeros(4)).unwrap());
        assert!(q(&s, 3).in_z(&bs("0100")).unwrap());
        let k = complete(5).unwrap();
        for d in 1..=5 {
            for i in 0..5 {
                assert!(!q(&k, d).in_z(&BitString::basis(5, i)).unwrap());
            }
        }
    }

    #[test]
    fn z_span_examples() {
        let k = complete(5).unwrap();
        assert!(q(&k, 1).z_span_basis().unwrap().is_empty());
        let basis = q(&k, 3).z_span_basis().unwrap().to_vec();
        assert_eq!(basis.len(), 4);
        for b in &basis {
            assert_eq!(b.weight(), 2);
        }
        assert_eq!(q(&k, 3).zperp_basis().unwrap(), &[BitString::ones(5)]);
        assert_eq!(q(&k, 1).zperp_basis().unwrap().len(), 5);
    }

    #[test]
    fn multi_star_z_basis() {
        let g = multi_star(3, 3).unwrap();
        let basis = q(&g, 3).z_span_basis().unwrap().to_vec();
        let mut echelon = EchelonBasis::new(9);
        for b in &basis {
            echelon.insert(b);
        }
        assert_eq!(echelon.rank(), 6);
        for i in (0..9).filter(|i| i % 3 != 0) {
            assert!(echelon.contains(&BitString::basis(9, i)));
        }
    }

    #[test]
    fn w_membership_examples() {
        let k = complete(5).unwrap();
        assert!(q(&k, 3).in_w(&BitString::ones(5)).unwrap());
        assert!(q(&k, 3).in_w(&bs("11000")).unwrap());
        assert!(q(&k, 1).in_w(&BitString::zeros(5)).unwrap());
    }

    #[test]
    fn c_set_examples() {
        for n in 3..=7 {
            let s = star(n).unwrap();
            assert!(q(&s, 3).c_set().unwrap().is_empty());
        }
        let g = multi_star(3, 3).unwrap();
        let c = q(&g, 3).c_set().unwrap();
        assert!(c.exhaustive);
        assert_eq!(c.members, vec![bs("100100100")]);
    }

    #[test]
    fn toric_c_set_l5() {
        let g = toric(5).unwrap();
        let c = q(&g, 5).c_set().unwrap();
        assert_eq!(c.zperp_dim, 2);
        assert_eq!(c.members.len(), 3);
    }

    #[test]
    fn d_max_small_families() {
        for n in 4..=8 {
            let r = d_max(&complete(n).unwrap(), DmaxStrategy::Incremental, &Caps::default()).unwrap();
            assert_eq!(r.value, Some(2), "K_{n}");
        }
        let r = d_max(&multi_star(3, 3).unwrap(), DmaxStrategy::Incremental, &Caps::default()).unwrap();
        assert_eq!(r.value, Some(3));
        assert_eq!(r.certificate, Some(bs("100100100")));
        let b = d_max(&multi_star(3, 3).unwrap(), DmaxStrategy::Bisection, &Caps::default()).unwrap();
        assert_eq!(b.value, Some(3));
        assert_eq!(b.certificate, r.certificate);
    }

    #[test]
    fn d_max_single_vertex() {
        let g = Graph::new(1, [], "").unwrap();
        assert_eq!(d_max(&g, DmaxStrategy::Incremental, &Caps::default()).unwrap().value, Some(1));
    }

    #[test]
    fn tight_budget_returns_bracket() {
        let g = lattice(2, 4, true).unwrap();
        let caps = Caps {
            max_candidates: 100,
            ..Caps::default()
        };
        let r = d_max(&g, DmaxStrategy::Incremental, &caps).unwrap();
        assert!(r.value.is_none());
        assert!(r.lower <= r.upper);
        assert!(r.probes.iter().any(|p| p.outcome == "budget"));
    }

    #[test]
    fn max_weight_cap_is_a_budget_error() {
        let g = complete(6).unwrap();
        let caps = Caps {
            max_weight: Some(1),
            ..Caps::default()
        };
        let e = SetQuery::new(&g, 3, caps).unwrap().z_span_basis().unwrap_err();
        assert!(e.is_budget());
    }

    #[test]
    fn empty_codeword_list_passes() {
        let g = star(4).unwrap();
        assert!(verify_codewords(&g, 2, &[], &Caps::default()).unwrap().pass);
        assert!(verify_codewords(&g, 2, &[BitString::zeros(4)], &Caps::default()).is_err());
    }

    #[test]
    fn classical_codes() {
        let rep = ClassicalCode::parse("111\n").unwrap();
        assert_eq!(classical_min_distance(&rep).unwrap(), 3);
        let par = ClassicalCode::parse("110\n011\n").unwrap();
        assert_eq!(classical_min_distance(&par).unwrap(), 2);
        assert!(ClassicalCode::parse("110\n110\n").is_err());
        assert!(ClassicalCode::parse("1x0\n").is_err());
    }

    #[test]
    fn ldpc_labels() {
        let code = ClassicalCode::parse("1100\n0011\n").unwrap();
        let labels = ldpc_embed(&code, 2).unwrap();
        assert_eq!(labels.len(), 4);
        assert!(labels[0].is_zero());
        assert_eq!(labels[1], bs("10100000"));
        for (i, l) in labels.iter().enumerate() {
            assert_eq!(l.weight(), code.encode(i as u64).weight());
        }
        assert!(ldpc_embed(&code, 3).is_err());
    }

    #[test]
    fn power_fit_recovers_exponent() {
        let pts: Vec<(f64, f64)> = (1..6).map(|i| (i as f64, 3.0 * (i as f64).powf(0.5))).collect();
        let fit = power_law_fit(&pts).unwrap();
        assert!((fit.exponent - 0.5).abs() < 1e-12);
        assert!((fit.prefactor - 3.0).abs() < 1e-12);
        let pts32: Vec<(f32, f32)> = pts.iter().map(|&(a, b)| (a as f32, b as f32)).collect();
        assert!((power_law_fit(&pts32).unwrap().exponent - 0.5).abs() < 1e-4);
        assert!(power_law_fit(&[(2.0f64, 1.0)]).is_none());
    }
}
