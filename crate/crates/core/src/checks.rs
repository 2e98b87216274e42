//! Randomized cross-checks between the set analysis and the state-vector
//! oracle. Each routine is deterministic given its RNG.

use rand::Rng;
use serde::Serialize;

use crate::analysis::{graph_basis_inner_analytic, Caps, SetQuery};
use crate::error::Result;
use crate::gf2::BitString;
use crate::graphs::{random_connected_graph, random_graph, Graph};
use crate::oracle::{build_graph_state, check_graph_pair, graph_basis_state, pauli_matrix_element, DEFAULT_QUBIT_CAP};

pub fn random_bits<R: Rng + ?Sized>(n: usize, rng: &mut R) -> BitString {
    BitString::from_indices(n, (0..n).filter(|_| rng.random_bool(0.5)))
}

/// Compares the closed-form graph-basis element with the state vector.
pub fn matrix_element_agrees(g: &Graph, h: &BitString, gg: &BitString, k: &BitString, l: &BitString) -> Result<bool> {
    let analytic = graph_basis_inner_analytic(&g.adjacency(), h, gg, k, l)?;
    let hs = graph_basis_state::<f64>(g, h)?;
    let gs = graph_basis_state::<f64>(g, gg)?;
    let v = pauli_matrix_element(&hs, &gs, k, l)?;
    Ok((v.re - analytic as f64).abs() < 1e-9 && v.im.abs() < 1e-9)
}

#[derive(Clone, Debug, Serialize)]
pub struct Mismatch {
    pub graph: String,
    pub edges: Vec<(usize, usize)>,
    pub h: BitString,
    pub g: BitString,
    pub k: BitString,
    pub l: BitString,
    pub d: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SampleReport {
    pub samples: usize,
    pub agreements: usize,
    pub first_mismatch: Option<Mismatch>,
}

impl SampleReport {
    pub fn pass(&self) -> bool {
        self.agreements == self.samples
    }
}

/// `samples` random (G, h, g, k, l) tuples with `n` drawn from `n_range`.
pub fn matrix_element_random<R: Rng + ?Sized>(
    samples: usize,
    n_range: std::ops::RangeInclusive<usize>,
    rng: &mut R,
) -> Result<SampleReport> {
    let mut agreements = 0;
    let mut first = None;
    for _ in 0..samples {
        let n = rng.random_range(n_range.clone());
        let p = rng.random_range(0.2..0.8);
        let g = random_connected_graph(n, p, rng);
        let (h, gg, k, l) = (
            random_bits(n, rng),
            random_bits(n, rng),
            random_bits(n, rng),
            random_bits(n, rng),
        );
        // half the samples are forced onto the support A·k + l = h + g
        let l = if rng.random_bool(0.5) {
            let mut forced = g.adjacency().mat_vec(&k)?;
            forced.xor_assign(&h);
            forced.xor_assign(&gg);
            forced
        } else {
            l
        };
        if matrix_element_agrees(&g, &h, &gg, &k, &l)? {
            agreements += 1;
        } else if first.is_none() {
            first = Some(Mismatch {
                graph: g.name().into(),
                edges: g.edges().to_vec(),
                h,
                g: gg,
                k,
                l,
                d: None,
            });
        }
    }
    Ok(SampleReport {
        samples,
        agreements,
        first_mismatch: first,
    })
}

/// `samples` random (G, h, d): `h ∈ C(d)` against the Knill-Laflamme check.
///
/// Half of the `h` are drawn from C(d) itself when it is nonempty, so both
/// outcomes are exercised.
pub fn code_membership_random<R: Rng + ?Sized>(samples: usize, n_max: usize, d_max: usize, rng: &mut R) -> Result<SampleReport> {
    let mut agreements = 0;
    let mut first = None;
    for _ in 0..samples {
        let n = rng.random_range(2..=n_max);
        let p = rng.random_range(0.15..0.7);
        let g = random_graph(n, p, rng);
        let d = rng.random_range(1..=d_max.min(n));
        let q = SetQuery::new(&g, d, Caps::default())?;
        let mut h = random_bits(n, rng);
        if rng.random_bool(0.5) {
            let c = q.c_set()?;
            if !c.members.is_empty() {
                h = c.members[rng.random_range(0..c.members.len())].clone();
            }
        }
        if h.is_zero() {
            h.set(rng.random_range(0..n), true);
        }
        let in_c = q.in_c(&h)?;
        let pass = check_graph_pair(&g, &h, d, DEFAULT_QUBIT_CAP)?.pass;
        if in_c == pass {
            agreements += 1;
        } else if first.is_none() {
            first = Some(Mismatch {
                graph: g.name().into(),
                edges: g.edges().to_vec(),
                h,
                g: BitString::zeros(n),
                k: BitString::zeros(n),
                l: BitString::zeros(n),
                d: Some(d),
            });
        }
    }
    Ok(SampleReport {
        samples,
        agreements,
        first_mismatch: first,
    })
}

/// Every graph stabilizer has expectation +1 on |G⟩.
pub fn stabilizers_fix_state(g: &Graph) -> Result<bool> {
    let psi = build_graph_state::<f64>(g)?;
    for s in crate::stabilizer::graph_stabilizers(g).generators() {
        let v = crate::oracle::expectation(&psi, s)?;
        if (v.re - 1.0).abs() > 1e-9 || v.im.abs() > 1e-9 {
            return Ok(false);
        }
    }
    Ok(true)
}
