use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tqo_core::analysis::{Caps, SetQuery};
use tqo_core::checks::{matrix_element_agrees, random_bits};
use tqo_core::gf2::{independent_subset, rank_of, BitString, Gf2Matrix};
use tqo_core::graphs::{complete, complete_bipartite, graph_from_mask, line_graph, odd_degree_vertices, s_vector, Graph};
use tqo_core::oracle::{build_graph_state, expectation, graph_basis_state};
use tqo_core::stabilizer::{code_pair_flip_operator, code_pair_stabilizers, graph_stabilizers, PauliOperator};

fn bitstring(n: usize) -> impl Strategy<Value = BitString> {
    prop::collection::vec(any::<bool>(), n).prop_map(|b| BitString::from_bools(&b))
}

fn sized_pair(max: usize) -> impl Strategy<Value = (BitString, BitString)> {
    (1..=max).prop_flat_map(|n| (bitstring(n), bitstring(n)))
}

fn graph(min: usize, max: usize) -> impl Strategy<Value = Graph> {
    (min..=max).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (Just(n), 0u64..(1u64 << pairs))
    })
    .prop_map(|(n, mask)| graph_from_mask(n, mask))
}

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Gf2Matrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(bitstring(c), r).prop_map(|rows| Gf2Matrix::from_rows(rows).unwrap())
    })
}

fn pauli(n: usize) -> impl Strategy<Value = PauliOperator> {
    (bitstring(n), bitstring(n), any::<bool>()).prop_map(|(x, z, s)| PauliOperator::new(x, z, s).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn xor_weight_law((a, b) in sized_pair(200)) {
        let x = a.xor(&b).unwrap();
        let and = a.and(&b).unwrap().weight();
        prop_assert_eq!(x.weight(), a.weight() + b.weight() - 2 * and);
        prop_assert_eq!(a.or(&b).unwrap().weight(), a.weight() + b.weight() - and);
    }

    #[test]
    fn text_round_trip(a in (1usize..150).prop_flat_map(bitstring)) {
        let back: BitString = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn dot_is_transpose_adjoint(m in matrix(12, 70), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_bits(m.n_cols(), &mut rng);
        let y = random_bits(m.n_rows(), &mut rng);
        let lhs = m.mat_vec(&x).unwrap().dot(&y).unwrap();
        let rhs = x.dot(&m.transpose().mat_vec(&y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn kernel_is_annihilated_and_complete(m in matrix(10, 40)) {
        let ker = m.kernel_basis();
        for v in &ker {
            prop_assert!(m.mat_vec(v).unwrap().is_zero());
        }
        prop_assert_eq!(rank_of(&ker), ker.len());
        prop_assert_eq!(ker.len() + m.rank(), m.n_cols());
    }

    #[test]
    fn independent_subset_preserves_span(m in matrix(16, 20)) {
        let rows = m.rows().to_vec();
        let sub = independent_subset(&rows).unwrap();
        prop_assert_eq!(sub.len(), rank_of(&rows));
        prop_assert_eq!(rank_of(&sub), sub.len());
        let mut all = sub.clone();
        all.extend(rows.iter().cloned());
        prop_assert_eq!(rank_of(&all), sub.len());
    }

    #[test]
    fn handshaking(g in graph(1, 10)) {
        prop_assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.n_edges());
        prop_assert_eq!(g.odd_degree_count() % 2, 0);
    }

    #[test]
    fn line_graph_degree_identity(g in graph(2, 8)) {
        let (lg, map) = line_graph(&g);
        for (e, &(u, v)) in map.iter().enumerate() {
            prop_assert_eq!(lg.degree(e), g.degree(u) + g.degree(v) - 2);
        }
    }

    #[test]
    fn line_graph_column_is_endpoint_sum(g in graph(2, 8)) {
        let (lg, map) = line_graph(&g);
        let a = lg.adjacency();
        for (e, &(u, v)) in map.iter().enumerate() {
            let col = a.mat_vec(&BitString::basis(lg.n(), e)).unwrap();
            prop_assert_eq!(col, s_vector(&g, u).xor(&s_vector(&g, v)).unwrap());
        }
    }

    #[test]
    fn triangular_weight_law(m in 3usize..9, seed in any::<u64>()) {
        let base = complete(m).unwrap();
        let (t, _) = line_graph(&base);
        let k = random_bits(t.n(), &mut ChaCha8Rng::seed_from_u64(seed));
        let lk = odd_degree_vertices(&base, &k).unwrap().count;
        prop_assert_eq!(t.adjacency().mat_vec(&k).unwrap().weight(), lk * (m - lk));
    }

    #[test]
    fn rook_weight_law(m in 2usize..7, seed in any::<u64>()) {
        let base = complete_bipartite(m, m).unwrap();
        let (r, _) = line_graph(&base);
        let k = random_bits(r.n(), &mut ChaCha8Rng::seed_from_u64(seed));
        let od = odd_degree_vertices(&base, &k).unwrap();
        let (lx, ly) = (od.count_x.unwrap(), od.count_y.unwrap());
        prop_assert_eq!(r.adjacency().mat_vec(&k).unwrap().weight(), m * (lx + ly) - 2 * lx * ly);
    }

    #[test]
    fn triangular_z_members_have_even_degrees(m in 4usize..7, seed in any::<u64>()) {
        let base = complete(m).unwrap();
        let (t, _) = line_graph(&base);
        let q = SetQuery::new(&t, m / 2, Caps::default()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..64 {
            let mut k = BitString::zeros(t.n());
            for _ in 0..rand::Rng::random_range(&mut rng, 0..4) {
                k.flip(rand::Rng::random_range(&mut rng, 0..t.n()));
            }
            if q.in_z(&k).unwrap() {
                prop_assert_eq!(odd_degree_vertices(&base, &k).unwrap().count, 0);
            }
        }
    }

    #[test]
    fn analytic_element_matches_state_vector(g in graph(1, 6), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = g.n();
        let (h, gg, k) = (random_bits(n, &mut rng), random_bits(n, &mut rng), random_bits(n, &mut rng));
        let l = random_bits(n, &mut rng);
        prop_assert!(matrix_element_agrees(&g, &h, &gg, &k, &l).unwrap());
        let mut on_support = g.adjacency().mat_vec(&k).unwrap();
        on_support.xor_assign(&h);
        on_support.xor_assign(&gg);
        prop_assert!(matrix_element_agrees(&g, &h, &gg, &k, &on_support).unwrap());
    }

    #[test]
    fn set_nesting(g in graph(2, 8), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = g.n();
        let qs: Vec<_> = (1..=n + 1).map(|d| SetQuery::new(&g, d, Caps::default()).unwrap()).collect();
        let mut h = random_bits(n, &mut rng);
        if h.is_zero() {
            h.set(0, true);
        }
        prop_assert!(qs[0].in_c(&h).unwrap());
        prop_assert!(qs[n].zperp_basis().unwrap().is_empty());
        for d in 1..=n {
            let k = random_bits(n, &mut rng);
            prop_assert!(!qs[d - 1].in_z(&k).unwrap() || qs[d].in_z(&k).unwrap());
            prop_assert!(!qs[d - 1].in_w(&h).unwrap() || qs[d].in_w(&h).unwrap());
            prop_assert!(!qs[d].in_c(&h).unwrap() || qs[d - 1].in_c(&h).unwrap());
        }
    }

    #[test]
    fn c_set_empty_beyond_degree_bound(g in graph(2, 8)) {
        let d = g.max_degree() + 2;
        if d <= g.n() + 1 {
            let c = SetQuery::new(&g, d, Caps::default()).unwrap().c_set().unwrap();
            prop_assert!(c.members.is_empty());
        }
    }

    #[test]
    fn hadamard_is_involution(p in (1usize..12).prop_flat_map(pauli), seed in any::<u64>()) {
        let b = random_bits(p.n(), &mut ChaCha8Rng::seed_from_u64(seed));
        let twice = p.hadamard_conjugate(&b).unwrap().hadamard_conjugate(&b).unwrap();
        prop_assert_eq!(twice, p);
    }

    #[test]
    fn product_is_associative_up_to_phase(n in 1usize..10, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draw = || PauliOperator::new(random_bits(n, &mut rng), random_bits(n, &mut rng), false).unwrap();
        let (a, b, c) = (draw(), draw(), draw());
        let (ab, p1) = a.mul_phase(&b).unwrap();
        let (abc, p2) = ab.mul_phase(&c).unwrap();
        let (bc, p3) = b.mul_phase(&c).unwrap();
        let (a_bc, p4) = a.mul_phase(&bc).unwrap();
        prop_assert_eq!(abc.x(), a_bc.x());
        prop_assert_eq!(abc.z(), a_bc.z());
        prop_assert_eq!((abc.is_negative() as u8 * 2 + p1 + p2) % 4, (a_bc.is_negative() as u8 * 2 + p3 + p4) % 4);
    }

    #[test]
    fn code_pair_group(g in graph(2, 7), seed in any::<u64>()) {
        let n = g.n();
        let mut h = random_bits(n, &mut ChaCha8Rng::seed_from_u64(seed));
        if h.is_zero() {
            h.set(n - 1, true);
        }
        let s = code_pair_stabilizers(&g, &h).unwrap();
        prop_assert_eq!(s.len(), n - 1);
        prop_assert_eq!(s.symplectic_rank(), n - 1);
        prop_assert!(s.is_abelian());
        let psi = build_graph_state::<f64>(&g).unwrap();
        let phi = graph_basis_state::<f64>(&g, &h).unwrap();
        for p in s.generators() {
            prop_assert!((expectation(&psi, p).unwrap().re - 1.0).abs() < 1e-9);
            prop_assert!((expectation(&phi, p).unwrap().re - 1.0).abs() < 1e-9);
        }
        let flip = code_pair_flip_operator(&g, &h).unwrap();
        prop_assert!((expectation(&psi, &flip).unwrap().re - 1.0).abs() < 1e-9);
        prop_assert!((expectation(&phi, &flip).unwrap().re + 1.0).abs() < 1e-9);
    }

    #[test]
    fn graph_basis_eigenvalues(g in graph(1, 7), seed in any::<u64>()) {
        let n = g.n();
        let h = random_bits(n, &mut ChaCha8Rng::seed_from_u64(seed));
        let phi = graph_basis_state::<f64>(&g, &h).unwrap();
        for (i, s) in graph_stabilizers(&g).generators().iter().enumerate() {
            let v = expectation(&phi, s).unwrap();
            let expected = if h.get(i) { -1.0 } else { 1.0 };
            prop_assert!((v.re - expected).abs() < 1e-9 && v.im.abs() < 1e-9);
        }
    }
}
