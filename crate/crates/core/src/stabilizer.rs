//! Symplectic Pauli operators and stabilizer groups.
//!
//! A [`PauliOperator`] with bits `(x, z)` and sign `s` denotes the Hermitian
//! operator `s · i^{x·z} X^x Z^z`, so a qubit with both bits set carries `Y`.
//! Products of commuting operators stay Hermitian; for anticommuting pairs
//! the extra factor of `i` is reported separately by [`PauliOperator::mul_phase`]
//! and dropped by [`PauliOperator::mul`].

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf2::{BitString, Combinations, EchelonBasis, Gf2Matrix};
use crate::graphs::{toric3d, toric3d_index, Graph};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    x: BitString,
    z: BitString,
    negative: bool,
}

impl PauliOperator {
    pub fn new(x: BitString, z: BitString, negative: bool) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::LengthMismatch {
                left: x.len(),
                right: z.len(),
            });
        }
        Ok(PauliOperator { x, z, negative })
    }

    pub fn identity(n: usize) -> Self {
        PauliOperator {
            x: BitString::zeros(n),
            z: BitString::zeros(n),
            negative: false,
        }
    }

    /// Single-qubit `X`, `Y` or `Z` (given as a char) on qubit `q`.
    pub fn single(n: usize, q: usize, p: char) -> Result<Self> {
        let mut op = Self::identity(n);
        match p {
            'X' => op.x.set(q, true),
            'Z' => op.z.set(q, true),
            'Y' => {
                op.x.set(q, true);
                op.z.set(q, true);
            }
            'I' => {}
            other => return Err(Error::Parse(format!("unknown Pauli {other:?}"))),
        }
        Ok(op)
    }

    /// `X^x` with positive sign.
    pub fn x_string(x: BitString) -> Self {
        let n = x.len();
        PauliOperator {
            x,
            z: BitString::zeros(n),
            negative: false,
        }
    }

    pub fn z_string(z: BitString) -> Self {
        let n = z.len();
        PauliOperator {
            x: BitString::zeros(n),
            z,
            negative: false,
        }
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn x(&self) -> &BitString {
        &self.x
    }

    pub fn z(&self) -> &BitString {
        &self.z
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    /// +1 or -1.
    pub fn sign(&self) -> i8 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    pub fn negated(&self) -> Self {
        PauliOperator {
            negative: !self.negative,
            ..self.clone()
        }
    }

    /// weight(x ∨ z).
    pub fn weight(&self) -> usize {
        self.x.or_weight(&self.z)
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// `x ‖ z`, the symplectic row.
    pub fn symplectic(&self) -> BitString {
        self.x.concat(&self.z)
    }

    pub fn commutes(&self, other: &PauliOperator) -> Result<bool> {
        if self.n() != other.n() {
            return Err(Error::LengthMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        Ok(self.commutes_unchecked(other))
    }

    pub(crate) fn commutes_unchecked(&self, other: &PauliOperator) -> bool {
        self.x.dot_unchecked(&other.z) == self.z.dot_unchecked(&other.x)
    }

    /// Product `self · other = i^phase · result`, where `result` is a signed
    /// Hermitian operator and `phase` is 0 (commuting) or 1 (anticommuting).
    pub fn mul_phase(&self, other: &PauliOperator) -> Result<(PauliOperator, u8)> {
        if self.n() != other.n() {
            return Err(Error::LengthMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        let x = {
            let mut v = self.x.clone();
            v.xor_assign(&other.x);
            v
        };
        let z = {
            let mut v = self.z.clone();
            v.xor_assign(&other.z);
            v
        };
        // X^a Z^b X^c Z^d = (-1)^{b·c} X^{a+c} Z^{b+d}
        let mut e: i64 = self.x.and_weight(&self.z) as i64 + other.x.and_weight(&other.z) as i64
            - x.and_weight(&z) as i64;
        if self.z.dot_unchecked(&other.x) {
            e += 2;
        }
        if self.negative {
            e += 2;
        }
        if other.negative {
            e += 2;
        }
        let e = e.rem_euclid(4) as u8;
        Ok((
            PauliOperator {
                x,
                z,
                negative: e >= 2,
            },
            e % 2,
        ))
    }

    /// Product with any factor of `i` dropped.
    pub fn mul(&self, other: &PauliOperator) -> Result<PauliOperator> {
        Ok(self.mul_phase(other)?.0)
    }

    /// Conjugation by Hadamards on the qubits in `b`: `X ↔ Z`, `Y -> -Y`.
    pub fn hadamard_conjugate(&self, b: &BitString) -> Result<PauliOperator> {
        if b.len() != self.n() {
            return Err(Error::LengthMismatch {
                left: self.n(),
                right: b.len(),
            });
        }
        let mut out = self.clone();
        for q in b.ones_iter() {
            let (xq, zq) = (self.x.get(q), self.z.get(q));
            out.x.set(q, zq);
            out.z.set(q, xq);
            if xq && zq {
                out.negative = !out.negative;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: String = (0..self.n())
            .map(|q| match (self.x.get(q), self.z.get(q)) {
                (false, false) => 'I',
                (true, false) => 'X',
                (false, true) => 'Z',
                (true, true) => 'Y',
            })
            .collect();
        write!(f, "{}{body}", if self.negative { '-' } else { '+' })
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli({self})")
    }
}

impl FromStr for PauliOperator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (negative, body) = match s.chars().next() {
            Some('+') => (false, &s[1..]),
            Some('-') => (true, &s[1..]),
            _ => (false, s),
        };
        let n = body.chars().count();
        let mut op = PauliOperator::identity(n);
        op.negative = negative;
        for (q, c) in body.chars().enumerate() {
            match c {
                'I' => {}
                'X' => op.x.set(q, true),
                'Z' => op.z.set(q, true),
                'Y' => {
                    op.x.set(q, true);
                    op.z.set(q, true);
                }
                other => return Err(Error::Parse(format!("unexpected Pauli character {other:?}"))),
            }
        }
        Ok(op)
    }
}

impl Serialize for PauliOperator {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PauliOperator {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(deserializer)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Outcome of a sign-sensitive membership query.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Membership {
    NotInGroup,
    /// The operator itself is in the group.
    Member,
    /// Only its negation is in the group.
    NegationMember,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilizerGroup {
    n: usize,
    generators: Vec<PauliOperator>,
}

impl StabilizerGroup {
    pub fn new(n: usize, generators: Vec<PauliOperator>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.n() != n) {
            return Err(Error::LengthMismatch { left: n, right: g.n() });
        }
        Ok(StabilizerGroup { n, generators })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn symplectic_matrix(&self) -> Gf2Matrix {
        Gf2Matrix::from_rows_with_cols(self.generators.iter().map(PauliOperator::symplectic).collect(), 2 * self.n)
            .expect("generator lengths checked at construction")
    }

    pub fn symplectic_rank(&self) -> usize {
        self.symplectic_matrix().rank()
    }

    /// log2 of the stabilized-space dimension, `n - rank`.
    pub fn code_dimension_log2(&self) -> usize {
        self.n - self.symplectic_rank()
    }

    /// First anticommuting generator pair, if any.
    pub fn first_anticommuting_pair(&self) -> Option<(usize, usize)> {
        let g = &self.generators;
        (0..g.len()).find_map(|i| (i + 1..g.len()).find(|&j| !g[i].commutes_unchecked(&g[j])).map(|j| (i, j)))
    }

    pub fn is_abelian(&self) -> bool {
        self.first_anticommuting_pair().is_none()
    }

    /// Signed product of the generators selected by `combo`, in generator
    /// order.
    pub fn product(&self, combo: &BitString) -> Result<PauliOperator> {
        if combo.len() != self.generators.len() {
            return Err(Error::LengthMismatch {
                left: self.generators.len(),
                right: combo.len(),
            });
        }
        let mut acc = PauliOperator::identity(self.n);
        for i in combo.ones_iter() {
            acc = acc.mul(&self.generators[i])?;
        }
        Ok(acc)
    }

    /// Generator combinations that multiply to ±I (a basis of them).
    pub fn relations(&self) -> Vec<BitString> {
        self.symplectic_matrix().transpose().kernel_basis()
    }

    pub fn basis(&self) -> GroupBasis {
        GroupBasis::new(self)
    }

    /// Sign-insensitive membership.
    pub fn contains(&self, p: &PauliOperator) -> Result<bool> {
        self.basis().contains(p)
    }

    pub fn membership(&self, p: &PauliOperator) -> Result<Membership> {
        self.basis().membership(self, p)
    }

    pub fn hadamard_conjugate(&self, b: &BitString) -> Result<StabilizerGroup> {
        let gens = self
            .generators
            .iter()
            .map(|g| g.hadamard_conjugate(b))
            .collect::<Result<Vec<_>>>()?;
        StabilizerGroup::new(self.n, gens)
    }
}

/// Row-reduced `[x | z | e_i]` rows of a group, for membership queries.
#[derive(Clone, Debug)]
pub struct GroupBasis {
    n: usize,
    n_gens: usize,
    echelon: EchelonBasis,
}

impl GroupBasis {
    pub fn new(s: &StabilizerGroup) -> Self {
        let n_gens = s.generators.len();
        let mut echelon = EchelonBasis::new(2 * s.n + n_gens);
        for (i, g) in s.generators.iter().enumerate() {
            let row = g.symplectic().concat(&BitString::basis(n_gens, i));
            echelon.insert(&row);
        }
        GroupBasis {
            n: s.n,
            n_gens,
            echelon,
        }
    }

    /// Generator combination whose product matches `p` up to sign.
    pub fn solve(&self, p: &PauliOperator) -> Result<Option<BitString>> {
        if p.n() != self.n {
            return Err(Error::LengthMismatch { left: self.n, right: p.n() });
        }
        let target = p.symplectic().concat(&BitString::zeros(self.n_gens));
        let r = self.echelon.reduce(&target);
        let sym = r.slice(0, 2 * self.n);
        if !sym.is_zero() {
            return Ok(None);
        }
        Ok(Some(r.slice(2 * self.n, 2 * self.n + self.n_gens)))
    }

    pub fn contains(&self, p: &PauliOperator) -> Result<bool> {
        Ok(self.solve(p)?.is_some())
    }

    pub fn membership(&self, s: &StabilizerGroup, p: &PauliOperator) -> Result<Membership> {
        match self.solve(p)? {
            None => Ok(Membership::NotInGroup),
            Some(combo) => {
                let prod = s.product(&combo)?;
                Ok(if prod.negative == p.negative {
                    Membership::Member
                } else {
                    Membership::NegationMember
                })
            }
        }
    }
}

/// `S_i = X_i ∏_{j ~ i} Z_j`, one generator per vertex.
pub fn graph_stabilizers(g: &Graph) -> StabilizerGroup {
    let a = g.adjacency();
    let gens = (0..g.n())
        .map(|i| PauliOperator {
            x: BitString::basis(g.n(), i),
            z: a.row(i).clone(),
            negative: false,
        })
        .collect();
    StabilizerGroup::new(g.n(), gens).expect("lengths match")
}

/// `n - 1` generators fixing both |G⟩ and Z^h|G⟩: products of graph
/// stabilizers over a basis of `{r : r·h = 0}`.
pub fn code_pair_stabilizers(g: &Graph, h: &BitString) -> Result<StabilizerGroup> {
    if h.len() != g.n() {
        return Err(Error::LengthMismatch {
            left: g.n(),
            right: h.len(),
        });
    }
    if h.is_zero() {
        return Err(Error::InvalidParameters("h must be nonzero".into()));
    }
    let s = graph_stabilizers(g);
    let rs = Gf2Matrix::from_rows(vec![h.clone()])?.kernel_basis();
    let gens = rs.iter().map(|r| s.product(r)).collect::<Result<Vec<_>>>()?;
    StabilizerGroup::new(g.n(), gens)
}

/// A stabilizer product with `r·h = 1`, which fixes |G⟩ and negates Z^h|G⟩.
pub fn code_pair_flip_operator(g: &Graph, h: &BitString) -> Result<PauliOperator> {
    let i = h
        .lowest_set_bit()
        .ok_or_else(|| Error::InvalidParameters("h must be nonzero".into()))?;
    graph_stabilizers(g).product(&BitString::basis(g.n(), i))
}

/// Least-weight operator commuting with every generator and outside the
/// group (sign-insensitive), scanning weights `1..=w_max`.
///
/// Within a weight class the order is: support in lexicographic order, then
/// per-qubit letters with `X < Y < Z` read left to right.
pub fn normalizer_min_weight(s: &StabilizerGroup, w_max: usize) -> Result<Option<(usize, PauliOperator)>> {
    let n = s.n();
    let basis = s.basis();
    let gens = s.generators();
    let w_max = w_max.min(n);
    for w in 1..=w_max {
        let supports: Vec<Vec<usize>> = Combinations::new(n, w).collect();
        let found = supports
            .par_iter()
            .map(|support| -> Result<Option<PauliOperator>> {
                let total = 3usize.pow(w as u32);
                for code in 0..total {
                    let mut p = PauliOperator::identity(n);
                    let mut c = code;
                    let mut letters = vec![0usize; w];
                    for slot in (0..w).rev() {
                        letters[slot] = c % 3;
                        c /= 3;
                    }
                    for (&q, &letter) in support.iter().zip(&letters) {
                        match letter {
                            0 => p.x.set(q, true),
                            1 => {
                                p.x.set(q, true);
                                p.z.set(q, true);
                            }
                            _ => p.z.set(q, true),
                        }
                    }
                    if gens.iter().all(|g| g.commutes_unchecked(&p)) && !basis.contains(&p)? {
                        return Ok(Some(p));
                    }
                }
                Ok(None)
            })
            .find_map_first(|r| match r {
                Ok(None) => None,
                other => Some(other),
            });
        if let Some(r) = found {
            if let Some(p) = r? {
                return Ok(Some((w, p)));
            }
        }
    }
    Ok(None)
}

/// Vertex set `B = {(1, j, k)}` of the generalized toric graph.
pub fn toric3d_hub_layer(l: usize) -> BitString {
    let n = l * l * l;
    BitString::from_indices(n, (1..=l).flat_map(|k| (1..=l).map(move |j| toric3d_index(l, 1, j, k))))
}

fn pauli_from_terms(n: usize, xs: &[usize], zs: &[usize]) -> PauliOperator {
    // multiply single-qubit factors in the order written, X's first
    let mut acc = PauliOperator::identity(n);
    for &q in xs {
        acc = acc.mul(&PauliOperator::single(n, q, 'X').unwrap()).unwrap();
    }
    for &q in zs {
        acc = acc.mul(&PauliOperator::single(n, q, 'Z').unwrap()).unwrap();
    }
    acc
}

/// The six-local generator attached to site `(i, j, k)`.
pub fn s2_generator(l: usize, i: usize, j: usize, k: usize) -> PauliOperator {
    let n = l * l * l;
    let at = |a: usize, b: usize, c: usize| toric3d_index(l, a, b, c);
    let xs = [at(i, j, k), at(i + 1, j, k)];
    // j - 1 and k - 1 are written as j + L - 1, k + L - 1; index() wraps
    let zs = [
        at(i, j, k + 1),
        at(i, j + 1, k + 1),
        at(i + 1, j, k + l - 1),
        at(i + 1, j + l - 1, k + l - 1),
    ];
    pauli_from_terms(n, &xs, &zs)
}

/// Generators of the 3D toric graph code on `L^3` qubits. Generator `v` is
/// attached to the site with vertex index `v`.
pub fn gen_3d_code(l: usize) -> Result<StabilizerGroup> {
    if l < 2 {
        return Err(Error::InvalidParameters(format!("3D code needs L >= 2, got {l}")));
    }
    let n = l * l * l;
    let mut gens = Vec::with_capacity(n);
    for v in 0..n {
        let (i, j, k) = crate::graphs::toric3d_label(l, v);
        gens.push(s2_generator(l, i, j, k));
    }
    StabilizerGroup::new(n, gens)
}

/// Local products of the generalized toric graph stabilizers, one per
/// site, before Hadamard conjugation. Returned in vertex order.
pub fn toric3d_local_products(l: usize) -> Result<StabilizerGroup> {
    if l < 2 {
        return Err(Error::InvalidParameters(format!("3D code needs L >= 2, got {l}")));
    }
    let n = l * l * l;
    let s = graph_stabilizers(&toric3d(l)?);
    let at = |a: usize, b: usize, c: usize| toric3d_index(l, a, b, c);
    let mut gens = Vec::with_capacity(n);
    for v in 0..n {
        let (i, j, k) = crate::graphs::toric3d_label(l, v);
        let factors: Vec<usize> = if i == 1 {
            vec![at(2, j, k), at(1, j, k + 1), at(1, j + 1, k + 1)]
        } else if i == l {
            vec![at(l, j, k), at(1, j, k + l - 1), at(1, j + l - 1, k + l - 1)]
        } else {
            vec![at(i, j, k), at(i + 1, j, k)]
        };
        let mut acc = PauliOperator::identity(n);
        for f in factors {
            acc = acc.mul(&s.generators()[f])?;
        }
        gens.push(acc);
    }
    StabilizerGroup::new(n, gens)
}

/// `∏_j X_{1jk}`.
pub fn toric3d_logical(l: usize, k: usize) -> PauliOperator {
    let n = l * l * l;
    PauliOperator::x_string(BitString::from_indices(n, (1..=l).map(|j| toric3d_index(l, 1, j, k))))
}

/// Generator combination `T_k`: all sites in layer `k`.
pub fn toric3d_layer_combo(l: usize, k: usize) -> BitString {
    let n = l * l * l;
    BitString::from_indices(n, (1..=l).flat_map(|j| (1..=l).map(move |i| toric3d_index(l, i, j, k))))
}

#[derive(Clone, Debug, Serialize)]
pub struct Code3dReport {
    pub l: usize,
    pub n: usize,
    pub n_generators: usize,
    pub generator_weights_six: bool,
    pub pairwise_commuting: bool,
    /// H_B applied to local products of graph stabilizers equals the
    /// generator list, row by row with signs.
    pub derivation_chain_ok: bool,
    /// (a) every layer product is +I.
    pub constraints_hold: bool,
    pub symplectic_rank: usize,
    /// Number of independent generator relations.
    pub rank_deficiency: usize,
    /// The layer products span all relations.
    pub constraints_span_relations: bool,
    /// (b) rank = L^3 - L.
    pub n_independent_ok: bool,
    /// (c) log2 of the code dimension.
    pub logical_qubits: usize,
    pub code_dim_ok: bool,
    /// (d) each X string commutes with the group and lies outside it.
    pub logicals_ok: bool,
    /// The L strings are independent modulo the group.
    pub logicals_independent: bool,
    /// (e) minimum weight in N(S) - S, when scanned.
    pub distance: Option<usize>,
    pub distance_witness: Option<PauliOperator>,
    pub distance_scanned_up_to: Option<usize>,
    pub distance_ok: Option<bool>,
}

impl Code3dReport {
    pub fn parameters(&self) -> String {
        match self.distance {
            Some(d) => format!("[[{},{},{}]]", self.n, self.logical_qubits, d),
            None => format!("[[{},{},?]]", self.n, self.logical_qubits),
        }
    }

    /// All structural checks, and the distance check when it ran.
    pub fn all_pass(&self) -> bool {
        self.generator_weights_six
            && self.pairwise_commuting
            && self.derivation_chain_ok
            && self.constraints_hold
            && self.constraints_span_relations
            && self.n_independent_ok
            && self.code_dim_ok
            && self.logicals_ok
            && self.logicals_independent
            && self.distance_ok.unwrap_or(true)
    }
}

/// Runs the 3D code checks. With `distance_scan`, the normalizer is
/// scanned through weight `L`.
pub fn verify_3d_code(l: usize, distance_scan: bool) -> Result<Code3dReport> {
    let code = gen_3d_code(l)?;
    let n = code.n();
    let gens = code.generators();

    let generator_weights_six = gens.iter().all(|g| g.weight() == 6);
    let pairwise_commuting = code.is_abelian();

    let derived = toric3d_local_products(l)?.hadamard_conjugate(&toric3d_hub_layer(l))?;
    let derivation_chain_ok = derived.generators() == gens;

    let layer_products: Vec<PauliOperator> = (1..=l)
        .map(|k| code.product(&toric3d_layer_combo(l, k)))
        .collect::<Result<_>>()?;
    let constraints_hold = layer_products.iter().all(|p| p.is_identity() && !p.is_negative());

    let symplectic_rank = code.symplectic_rank();
    let rank_deficiency = gens.len() - symplectic_rank;
    let constraint_rank = crate::gf2::rank_of(&(1..=l).map(|k| toric3d_layer_combo(l, k)).collect::<Vec<_>>());
    let constraints_span_relations = constraint_rank == rank_deficiency && constraint_rank == l;
    let n_independent_ok = symplectic_rank == n - l;
    let logical_qubits = n - symplectic_rank;
    let code_dim_ok = logical_qubits == l;

    let basis = code.basis();
    let logicals: Vec<PauliOperator> = (1..=l).map(|k| toric3d_logical(l, k)).collect();
    let mut logicals_ok = true;
    for s in &logicals {
        logicals_ok &= gens.iter().all(|g| g.commutes_unchecked(s)) && !basis.contains(s)?;
    }
    let mut extended = EchelonBasis::new(2 * n);
    for g in gens {
        extended.insert(&g.symplectic());
    }
    let logicals_independent = logicals.iter().all(|s| extended.insert(&s.symplectic()));

    let (distance, distance_witness, scanned, distance_ok) = if distance_scan {
        match normalizer_min_weight(&code, l)? {
            Some((w, p)) => (Some(w), Some(p), Some(l), Some(w == l)),
            None => (None, None, Some(l), Some(false)),
        }
    } else {
        (None, None, None, None)
    };

    Ok(Code3dReport {
        l,
        n,
        n_generators: gens.len(),
        generator_weights_six,
        pairwise_commuting,
        derivation_chain_ok,
        constraints_hold,
        symplectic_rank,
        rank_deficiency,
        constraints_span_relations,
        n_independent_ok,
        logical_qubits,
        code_dim_ok,
        logicals_ok,
        logicals_independent,
        distance,
        distance_witness,
        distance_scanned_up_to: scanned,
        distance_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{complete, star};

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    #[test]
    fn text_form_round_trip() {
        for s in ["+XXIZZI", "-YIZ", "+I"] {
            assert_eq!(p(s).to_string(), s);
        }
        assert_eq!(p("XYZ").weight(), 3);
        assert!("+XQ".parse::<PauliOperator>().is_err());
    }

    #[test]
    fn commutation_examples() {
        assert!(p("XI").commutes(&p("IZ")).unwrap());
        assert!(!p("XI").commutes(&p("ZI")).unwrap());
        assert!(p("XX").commutes(&p("ZZ")).unwrap());
        assert!(p("XI").commutes(&p("ZZZ")).is_err());
    }

    #[test]
    fn products_track_sign() {
        // XZ = -iY, so the Hermitian part is -Y with one factor of i
        let (r, phase) = p("X").mul_phase(&p("Z")).unwrap();
        assert_eq!((r.to_string(), phase), ("-Y".to_string(), 1));
        let (r, phase) = p("Z").mul_phase(&p("X")).unwrap();
        assert_eq!((r.to_string(), phase), ("+Y".to_string(), 1));
        // (XX)(ZZ) = -YY
        assert_eq!(p("XX").mul(&p("ZZ")).unwrap().to_string(), "-YY");
        assert_eq!(p("Y").mul(&p("Y")).unwrap().to_string(), "+I");
        assert_eq!(p("-X").mul(&p("X")).unwrap().to_string(), "-I");
    }

    #[test]
    fn hadamard_conjugation() {
        let b = BitString::ones(2);
        let s = graph_stabilizers(&complete(2).unwrap());
        let c = s.hadamard_conjugate(&b).unwrap();
        assert_eq!(c.generators()[0].to_string(), "+ZX");
        assert_eq!(c.generators()[1].to_string(), "+XZ");
        assert_eq!(s.hadamard_conjugate(&BitString::zeros(2)).unwrap(), s);
        assert_eq!(p("+Y").hadamard_conjugate(&BitString::ones(1)).unwrap().to_string(), "-Y");
    }

    #[test]
    fn graph_stabilizer_examples() {
        let s = graph_stabilizers(&complete(2).unwrap());
        let text: Vec<_> = s.generators().iter().map(|g| g.to_string()).collect();
        assert_eq!(text, vec!["+XZ", "+ZX"]);
        let st = graph_stabilizers(&star(4).unwrap());
        assert_eq!(st.generators()[0].to_string(), "+XZZZ");
        assert!(st.is_abelian());
        assert_eq!(st.symplectic_rank(), 4);
        assert_eq!(st.code_dimension_log2(), 0);
    }

    #[test]
    fn code_pair_generators() {
        let g = complete(2).unwrap();
        let h: BitString = "11".parse().unwrap();
        let s = code_pair_stabilizers(&g, &h).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.generators()[0], graph_stabilizers(&g).product(&h).unwrap());
        assert!(code_pair_stabilizers(&g, &BitString::zeros(2)).is_err());
    }

    #[test]
    fn group_membership() {
        let code = gen_3d_code(2).unwrap();
        for g in code.generators() {
            assert!(code.contains(g).unwrap());
            assert_eq!(code.membership(g).unwrap(), Membership::Member);
            assert_eq!(code.membership(&g.negated()).unwrap(), Membership::NegationMember);
        }
        assert!(code.contains(&PauliOperator::identity(8)).unwrap());
        assert!(!code.contains(&PauliOperator::single(8, 0, 'X').unwrap()).unwrap());
    }

    #[test]
    fn single_qubit_z_has_no_logical_of_weight_one() {
        let s = StabilizerGroup::new(1, vec![p("Z")]).unwrap();
        assert_eq!(normalizer_min_weight(&s, 1).unwrap(), None);
    }

    #[test]
    fn three_d_generators_are_six_local() {
        for l in 2..=4 {
            let code = gen_3d_code(l).unwrap();
            assert_eq!(code.len(), l * l * l);
            assert!(code.generators().iter().all(|g| g.weight() == 6));
            assert!(code.is_abelian());
        }
    }

    #[test]
    fn three_d_derivation_chain() {
        for l in 2..=4 {
            let derived = toric3d_local_products(l).unwrap().hadamard_conjugate(&toric3d_hub_layer(l)).unwrap();
            assert_eq!(derived, gen_3d_code(l).unwrap(), "L={l}");
        }
    }

    #[test]
    fn three_d_relation_count() {
        // rank deficiencies from an independent dense GF(2) elimination
        for (l, def) in [(2, 4), (3, 5), (4, 8), (5, 9)] {
            let r = verify_3d_code(l, false).unwrap();
            assert_eq!(r.rank_deficiency, def, "L={l}");
            assert!(r.constraints_hold && r.logicals_ok && r.derivation_chain_ok);
            assert!(!r.constraints_span_relations);
        }
    }
}
