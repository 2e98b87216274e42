//! Dense state-vector reference implementation.
//!
//! Qubit `q` is bit `q` of the basis-state index, matching bit `q` of a
//! [`BitString`]. Operators `X^k Z^l` apply the Z part first.

use num_complex::Complex;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{binomial, BitString, Combinations};
use crate::graphs::Graph;
use crate::scalar::Scalar;
use crate::stabilizer::PauliOperator;

/// Default cap on qubit count.
pub const DEFAULT_QUBIT_CAP: usize = 14;

/// Tolerance used by the Knill-Laflamme check in double precision.
pub const QECC_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector<T: Scalar> {
    n: usize,
    amps: Vec<Complex<T>>,
}

fn mask_of(k: &BitString) -> usize {
    k.to_u64().expect("state-vector qubit counts fit in one word") as usize
}

impl<T: Scalar> StateVector<T> {
    /// |0^n⟩.
    pub fn zero_state(n: usize, cap: usize) -> Result<Self> {
        if n > cap || n >= 40 {
            return Err(Error::QubitCap { n, cap: cap.min(39) });
        }
        let mut amps = vec![Complex::new(T::zero(), T::zero()); 1 << n];
        amps[0] = Complex::new(T::one(), T::zero());
        Ok(StateVector { n, amps })
    }

    pub fn from_amplitudes(n: usize, amps: Vec<Complex<T>>) -> Result<Self> {
        if amps.len() != 1usize << n {
            return Err(Error::DimensionMismatch(format!(
                "{} amplitudes for {n} qubits",
                amps.len()
            )));
        }
        Ok(StateVector { n, amps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> T {
        self.amps.iter().fold(T::zero(), |acc, a| acc + a.norm_sqr())
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &StateVector<T>) -> Result<Complex<T>> {
        self.check_n(other)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| acc + a.conj() * b))
    }

    pub fn apply_h(&mut self, q: usize) {
        let s = T::FRAC_1_SQRT_2();
        let bit = 1usize << q;
        for x in 0..self.amps.len() {
            if x & bit == 0 {
                let (a, b) = (self.amps[x], self.amps[x | bit]);
                self.amps[x] = (a + b) * s;
                self.amps[x | bit] = (a - b) * s;
            }
        }
    }

    pub fn apply_cz(&mut self, a: usize, b: usize) {
        let m = (1usize << a) | (1usize << b);
        for (x, amp) in self.amps.iter_mut().enumerate() {
            if x & m == m {
                *amp = -*amp;
            }
        }
    }

    /// Z^h.
    pub fn apply_z_string(&mut self, h: &BitString) -> Result<()> {
        self.check_len(h)?;
        let m = mask_of(h);
        for (x, amp) in self.amps.iter_mut().enumerate() {
            if (x & m).count_ones() % 2 == 1 {
                *amp = -*amp;
            }
        }
        Ok(())
    }

    /// X^k.
    pub fn apply_x_string(&mut self, k: &BitString) -> Result<()> {
        self.check_len(k)?;
        let m = mask_of(k);
        if m != 0 {
            let old = self.amps.clone();
            for (x, amp) in self.amps.iter_mut().enumerate() {
                *amp = old[x ^ m];
            }
        }
        Ok(())
    }

    fn check_n(&self, other: &StateVector<T>) -> Result<()> {
        if self.n != other.n {
            return Err(Error::LengthMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    fn check_len(&self, k: &BitString) -> Result<()> {
        if k.len() != self.n {
            return Err(Error::LengthMismatch {
                left: self.n,
                right: k.len(),
            });
        }
        Ok(())
    }
}

/// ∏_{(i,j)∈E} CZ(i,j) H^{⊗n} |0^n⟩, by applying the gates.
pub fn build_graph_state<T: Scalar>(g: &Graph) -> Result<StateVector<T>> {
    build_graph_state_capped(g, DEFAULT_QUBIT_CAP)
}

pub fn build_graph_state_capped<T: Scalar>(g: &Graph, cap: usize) -> Result<StateVector<T>> {
    let mut psi = StateVector::zero_state(g.n(), cap)?;
    for q in 0..g.n() {
        psi.apply_h(q);
    }
    for &(a, b) in g.edges() {
        psi.apply_cz(a, b);
    }
    Ok(psi)
}

/// Z^h |G⟩.
pub fn graph_basis_state<T: Scalar>(g: &Graph, h: &BitString) -> Result<StateVector<T>> {
    graph_basis_state_capped(g, h, DEFAULT_QUBIT_CAP)
}

pub fn graph_basis_state_capped<T: Scalar>(g: &Graph, h: &BitString, cap: usize) -> Result<StateVector<T>> {
    let mut psi = build_graph_state_capped(g, cap)?;
    psi.apply_z_string(h)?;
    Ok(psi)
}

/// ⟨φ| X^k Z^l |ψ⟩.
pub fn pauli_matrix_element<T: Scalar>(
    phi: &StateVector<T>,
    psi: &StateVector<T>,
    k: &BitString,
    l: &BitString,
) -> Result<Complex<T>> {
    phi.check_n(psi)?;
    phi.check_len(k)?;
    phi.check_len(l)?;
    Ok(matrix_element_masks(phi, psi, mask_of(k), mask_of(l)))
}

fn matrix_element_masks<T: Scalar>(phi: &StateVector<T>, psi: &StateVector<T>, km: usize, lm: usize) -> Complex<T> {
    // (X^k Z^l ψ)[x] = (-1)^{l·(x⊕k)} ψ[x⊕k]
    let mut acc = Complex::new(T::zero(), T::zero());
    for (x, a) in phi.amps.iter().enumerate() {
        let y = x ^ km;
        let term = a.conj() * psi.amps[y];
        if (y & lm).count_ones() % 2 == 1 {
            acc = acc - term;
        } else {
            acc = acc + term;
        }
    }
    acc
}

/// ⟨φ|P|ψ⟩ for a signed Hermitian Pauli operator.
pub fn pauli_operator_element<T: Scalar>(
    phi: &StateVector<T>,
    psi: &StateVector<T>,
    p: &PauliOperator,
) -> Result<Complex<T>> {
    let base = pauli_matrix_element(phi, psi, p.x(), p.z())?;
    let i_power = p.x().and_weight(p.z()) % 4;
    let phase = match i_power {
        0 => Complex::new(T::one(), T::zero()),
        1 => Complex::new(T::zero(), T::one()),
        2 => Complex::new(-T::one(), T::zero()),
        _ => Complex::new(T::zero(), -T::one()),
    };
    let signed = if p.is_negative() { -phase } else { phase };
    Ok(signed * base)
}

pub fn expectation<T: Scalar>(psi: &StateVector<T>, p: &PauliOperator) -> Result<Complex<T>> {
    pauli_operator_element(psi, psi, p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// ⟨ψ_j|O|ψ_j⟩ differs from ⟨ψ_0|O|ψ_0⟩.
    Diagonal,
    /// ⟨ψ_i|O|ψ_j⟩ is nonzero for i < j.
    OffDiagonal,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QeccWitness {
    pub i: usize,
    pub j: usize,
    pub k: BitString,
    pub l: BitString,
    pub kind: ViolationKind,
    pub value_re: f64,
    pub value_im: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QeccVerdict {
    pub pass: bool,
    pub operators_checked: u64,
    pub witness: Option<QeccWitness>,
}

/// Σ_{w ≤ d-1} C(n, w) 3^w, the number of operators the check visits.
pub fn qecc_operator_count(n: usize, d: usize) -> u128 {
    (0..d.min(n + 1))
        .map(|w| binomial(n, w).saturating_mul(3u128.saturating_pow(w as u32)))
        .fold(0u128, u128::saturating_add)
}

/// All (k, l) with weight(k ∨ l) = w, sorted by (k, l) in text order.
fn operators_of_weight(n: usize, w: usize) -> Vec<(usize, usize)> {
    let mut ops = Vec::new();
    for support in Combinations::new(n, w) {
        for code in 0..3usize.pow(w as u32) {
            let (mut k, mut l, mut c) = (0usize, 0usize, code);
            for &q in &support {
                match c % 3 {
                    0 => k |= 1 << q,
                    1 => l |= 1 << q,
                    _ => {
                        k |= 1 << q;
                        l |= 1 << q;
                    }
                }
                c /= 3;
            }
            ops.push((k, l));
        }
    }
    let text_key = |m: usize| -> usize { (0..n).fold(0usize, |acc, q| (acc << 1) | (m >> q & 1)) };
    ops.sort_by_key(|&(k, l)| (text_key(k), text_key(l)));
    ops
}

/// Knill-Laflamme check over all `X^k Z^l` with weight(k ∨ l) ≤ d - 1.
///
/// The first violation in (weight, k, l) order is reported; pairs within an
/// operator are scanned diagonal first, then off-diagonal in `(i, j)` order.
pub fn brute_force_qecc_check<T: Scalar>(codewords: &[StateVector<T>], d: usize) -> Result<QeccVerdict> {
    let tol = T::from_f64(T::TOLERANCE);
    let Some(first) = codewords.first() else {
        return Ok(QeccVerdict {
            pass: true,
            operators_checked: 0,
            witness: None,
        });
    };
    let n = first.n();
    for c in codewords.iter() {
        first.check_n(c)?;
    }
    for (i, a) in codewords.iter().enumerate() {
        for (j, b) in codewords.iter().enumerate().skip(i) {
            let v = a.inner(b)?;
            let expect = if i == j { T::one() } else { T::zero() };
            if (v - Complex::new(expect, T::zero())).norm() > tol {
                return Err(Error::NotOrthonormal(format!("⟨ψ_{i}|ψ_{j}⟩ = {:?}", v)));
            }
        }
    }
    let to_bits = |m: usize| BitString::from_u64(n, m as u64);
    let mut checked = 0u64;
    for w in 0..d.min(n + 1) {
        let ops = operators_of_weight(n, w);
        checked += ops.len() as u64;
        let hit = ops.par_iter().find_map_first(|&(km, lm)| {
            let diag0 = matrix_element_masks(&codewords[0], &codewords[0], km, lm);
            for (j, c) in codewords.iter().enumerate().skip(1) {
                let v = matrix_element_masks(c, c, km, lm);
                if (v - diag0).norm() > tol {
                    return Some((0, j, km, lm, ViolationKind::Diagonal, v - diag0));
                }
            }
            for i in 0..codewords.len() {
                for j in i + 1..codewords.len() {
                    let v = matrix_element_masks(&codewords[i], &codewords[j], km, lm);
                    if v.norm() > tol {
                        return Some((i, j, km, lm, ViolationKind::OffDiagonal, v));
                    }
                }
            }
            None
        });
        if let Some((i, j, km, lm, kind, v)) = hit {
            return Ok(QeccVerdict {
                pass: false,
                operators_checked: checked,
                witness: Some(QeccWitness {
                    i,
                    j,
                    k: to_bits(km),
                    l: to_bits(lm),
                    kind,
                    value_re: v.re.to_f64(),
                    value_im: v.im.to_f64(),
                }),
            });
        }
    }
    Ok(QeccVerdict {
        pass: true,
        operators_checked: checked,
        witness: None,
    })
}

/// The two-state code {|G⟩, Z^h|G⟩} checked at distance `d`.
pub fn check_graph_pair(g: &Graph, h: &BitString, d: usize, cap: usize) -> Result<QeccVerdict> {
    let a = build_graph_state_capped::<f64>(g, cap)?;
    let b = graph_basis_state_capped::<f64>(g, h, cap)?;
    brute_force_qecc_check(&[a, b], d)
}

/// The code spanned by |G⟩ and Z^h|G⟩ for every `h` in `hs`.
pub fn check_graph_code(g: &Graph, hs: &[BitString], d: usize, cap: usize) -> Result<QeccVerdict> {
    let mut states = vec![build_graph_state_capped::<f64>(g, cap)?];
    for h in hs {
        states.push(graph_basis_state_capped::<f64>(g, h, cap)?);
    }
    brute_force_qecc_check(&states, d)
}
