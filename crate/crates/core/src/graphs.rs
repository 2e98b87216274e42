//! Simple undirected graphs and the graph families used throughout.
//!
//! Vertex orderings are fixed per family:
//!
//! * star, complete, complete bipartite: natural order, hub or X part first;
//! * `multi_star(q, m)`: component `c` occupies `[c*m, (c+1)*m)` with its hub
//!   at `c*m`;
//! * `toric(L)`: `(i,j,x) -> (j-1)L + (i-1)`, `(i,j,y) -> L^2 + (j-1)L + (i-1)`;
//! * `toric3d(L)`: `(i,j,k) -> (k-1)L^2 + (j-1)L + (i-1)`;
//! * lattice: `Σ_d coord_d · L^d`;
//! * line graphs: lexicographic edge order of the base graph.
//!
//! All lattice labels `(i, j, ...)` are 1-indexed and periodic mod `L`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::io::{BufRead, Write};
use std::path::Path;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{BitString, Gf2Matrix};

/// Label reported for the connected multi-star realization built here.
pub const CMSTAR_VARIANT: &str = "cmstar-variant-1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    name: String,
    /// When set, vertices `0..split` form part X and `split..n` part Y.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bipartition: Option<usize>,
}

impl Graph {
    /// Builds a graph, normalizing each edge to `u < v` and sorting.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>, name: impl Into<String>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidParameters(format!("self-loop at vertex {a}")));
            }
            if a >= n || b >= n {
                return Err(Error::InvalidParameters(format!("edge ({a}, {b}) out of range for {n} vertices")));
            }
            let e = (a.min(b), a.max(b));
            if !set.insert(e) {
                return Err(Error::InvalidParameters(format!("duplicate edge ({}, {})", e.0, e.1)));
            }
        }
        Ok(Graph {
            n,
            edges: set.into_iter().collect(),
            name: name.into(),
            bipartition: None,
        })
    }

    /// Builds the graph whose adjacency matrix is `a`.
    pub fn from_adjacency(a: &Gf2Matrix, name: impl Into<String>) -> Result<Self> {
        if !a.is_symmetric() || !a.has_zero_diagonal() {
            return Err(Error::InvalidParameters(
                "adjacency matrix must be square, symmetric and zero-diagonal".into(),
            ));
        }
        let n = a.n_rows();
        let edges = (0..n).flat_map(|u| a.row(u).ones_iter().filter(move |&v| v > u).map(move |v| (u, v)));
        Graph::new(n, edges, name)
    }

    pub fn with_bipartition(mut self, split: usize) -> Result<Self> {
        if split > self.n || self.edges.iter().any(|&(u, v)| (u < split) == (v < split)) {
            return Err(Error::InvalidParameters(format!("split {split} is not a bipartition")));
        }
        self.bipartition = Some(split);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn bipartition(&self) -> Option<usize> {
        self.bipartition
    }

    pub fn adjacency(&self) -> Gf2Matrix {
        let mut a = Gf2Matrix::zeros(self.n, self.n);
        for &(u, v) in &self.edges {
            a.set(u, v, true);
            a.set(v, u, true);
        }
        a
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(u, v) in &self.edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Δ(G).
    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| match (a == v, b == v) {
                (true, _) => Some(b),
                (_, true) => Some(a),
                _ => None,
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut c = x;
            while p[c] != r {
                let next = p[c];
                p[c] = r;
                c = next;
            }
            r
        }
        let mut components = self.n;
        for &(u, v) in &self.edges {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a] = b;
                components -= 1;
            }
        }
        components == 1
    }

    /// Number of odd-degree vertices; always even for a valid graph.
    pub fn odd_degree_count(&self) -> usize {
        self.degrees().iter().filter(|&&d| d % 2 == 1).count()
    }

    /// Induced subgraph on `vertices`, relabelled in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let pos: HashMap<usize, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edges = self
            .edges
            .iter()
            .filter_map(|&(u, v)| Some((*pos.get(&u)?, *pos.get(&v)?)))
            .collect::<Vec<_>>();
        Graph::new(vertices.len(), edges, format!("{}[induced]", self.name)).expect("induced subgraph of a simple graph")
    }

    /// Connected components as sorted vertex lists, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let adj: Vec<Vec<usize>> = (0..self.n).map(|v| self.neighbors(v)).collect();
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                for &w in &adj[comp[i]] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Edge-list text: `n m`, then one `u v` line per edge in canonical order.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    pub fn write_edge_list<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        w.write_all(self.to_edge_list().as_bytes())
    }

    pub fn read_edge_list<R: BufRead>(reader: R, name: impl Into<String>) -> Result<Graph> {
        let mut lines = Vec::new();
        for line in reader.lines() {
            let line = line.map_err(|e| Error::Parse(e.to_string()))?;
            let body = line.split('#').next().unwrap_or("").trim().to_string();
            if !body.is_empty() {
                lines.push(body);
            }
        }
        let mut it = lines.into_iter();
        let header = it.next().ok_or_else(|| Error::Parse("empty edge list".into()))?;
        let (n, m) = parse_pair(&header)?;
        let mut edges = Vec::with_capacity(m);
        for line in it {
            let (u, v) = parse_pair(&line)?;
            if u >= v {
                return Err(Error::Parse(format!("edge line {line:?} must satisfy u < v")));
            }
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(Error::Parse(format!("header declares {m} edges, found {}", edges.len())));
        }
        Graph::new(n, edges, name)
    }

    pub fn load(path: &Path) -> Result<Graph> {
        let f = std::fs::File::open(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Graph::read_edge_list(std::io::BufReader::new(f), format!("file:{}", path.display()))
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (n={}, |E|={})", self.name, self.n, self.edges.len())
    }
}

fn parse_pair(line: &str) -> Result<(usize, usize)> {
    let mut parts = line.split_whitespace();
    let mut next = || -> Result<usize> {
        parts
            .next()
            .ok_or_else(|| Error::Parse(format!("expected two integers in {line:?}")))?
            .parse()
            .map_err(|_| Error::Parse(format!("bad integer in {line:?}")))
    };
    let a = next()?;
    let b = next()?;
    Ok((a, b))
}

/// A named graph family with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    /// K_{1,n-1} on `n` vertices, hub 0.
    Star { n: usize },
    Complete { n: usize },
    /// K_{a,b}, X part first.
    CompleteBipartite { a: usize, b: usize },
    /// `q` disjoint stars on `m` vertices each.
    MultiStar { q: usize, m: usize },
    /// D-dimensional square lattice of linear size L.
    Lattice { dim: usize, l: usize, periodic: bool },
    Toric { l: usize },
    ConnectedMultiStar { l: usize },
    /// L(K_m), the triangular graph.
    LineOfComplete { m: usize },
    /// L(K_{m,m}), the rook's graph.
    LineOfBipartite { m: usize },
    Toric3d { l: usize },
    Custom { path: String },
}

impl FamilySpec {
    pub fn label(&self) -> String {
        match self {
            FamilySpec::Star { n } => format!("star({n})"),
            FamilySpec::Complete { n } => format!("complete({n})"),
            FamilySpec::CompleteBipartite { a, b } => format!("complete_bipartite({a},{b})"),
            FamilySpec::MultiStar { q, m } => format!("multi_star({q},{m})"),
            FamilySpec::Lattice { dim, l, periodic } => {
                format!("lattice(D={dim},L={l},{})", if *periodic { "periodic" } else { "open" })
            }
            FamilySpec::Toric { l } => format!("toric({l})"),
            FamilySpec::ConnectedMultiStar { l } => format!("connected_multi_star({l},{CMSTAR_VARIANT})"),
            FamilySpec::LineOfComplete { m } => format!("line_of_complete({m})"),
            FamilySpec::LineOfBipartite { m } => format!("line_of_bipartite({m})"),
            FamilySpec::Toric3d { l } => format!("toric3d({l})"),
            FamilySpec::Custom { path } => format!("file:{path}"),
        }
    }

    /// Parses the CLI form: a family name followed by integer parameters,
    /// e.g. `["mstar", "3", "3"]`, `["lattice", "2", "3"]`, `["file", "g.txt"]`.
    pub fn parse_args(args: &[String]) -> Result<FamilySpec> {
        let (family, rest) = args
            .split_first()
            .ok_or_else(|| Error::InvalidParameters("missing family name".into()))?;
        if family == "file" || family == "custom" {
            let [path] = rest else {
                return Err(Error::InvalidParameters("file family takes one path".into()));
            };
            return Ok(FamilySpec::Custom { path: path.clone() });
        }
        let mut ints = Vec::new();
        let mut periodic = true;
        for r in rest {
            match r.as_str() {
                "open" => periodic = false,
                "periodic" => periodic = true,
                s => ints.push(
                    s.parse::<usize>()
                        .map_err(|_| Error::InvalidParameters(format!("bad parameter {s:?}")))?,
                ),
            }
        }
        let want = |k: usize| -> Result<()> {
            if ints.len() != k {
                return Err(Error::InvalidParameters(format!(
                    "family {family} takes {k} integer parameter(s), got {}",
                    ints.len()
                )));
            }
            Ok(())
        };
        let spec = match family.as_str() {
            "star" => {
                want(1)?;
                FamilySpec::Star { n: ints[0] }
            }
            "complete" => {
                want(1)?;
                FamilySpec::Complete { n: ints[0] }
            }
            "bipartite" | "complete_bipartite" => {
                if ints.len() == 1 {
                    FamilySpec::CompleteBipartite { a: ints[0], b: ints[0] }
                } else {
                    want(2)?;
                    FamilySpec::CompleteBipartite { a: ints[0], b: ints[1] }
                }
            }
            "mstar" | "multi_star" => {
                want(2)?;
                FamilySpec::MultiStar { q: ints[0], m: ints[1] }
            }
            "lattice" => {
                want(2)?;
                FamilySpec::Lattice {
                    dim: ints[0],
                    l: ints[1],
                    periodic,
                }
            }
            "toric" => {
                want(1)?;
                FamilySpec::Toric { l: ints[0] }
            }
            "cmstar" | "connected_multi_star" => {
                want(1)?;
                FamilySpec::ConnectedMultiStar { l: ints[0] }
            }
            "line_complete" | "line_of_complete" | "triangular" => {
                want(1)?;
                FamilySpec::LineOfComplete { m: ints[0] }
            }
            "line_bipartite" | "line_of_bipartite" | "rook" => {
                want(1)?;
                FamilySpec::LineOfBipartite { m: ints[0] }
            }
            "toric3d" => {
                want(1)?;
                FamilySpec::Toric3d { l: ints[0] }
            }
            other => return Err(Error::InvalidParameters(format!("unknown family {other:?}"))),
        };
        Ok(spec)
    }

    /// Same family with its size parameter replaced, for scans. Families
    /// with two size parameters (multi-star, bipartite) set both to `size`.
    pub fn with_size(&self, size: usize) -> FamilySpec {
        match self {
            FamilySpec::Star { .. } => FamilySpec::Star { n: size },
            FamilySpec::Complete { .. } => FamilySpec::Complete { n: size },
            FamilySpec::CompleteBipartite { .. } => FamilySpec::CompleteBipartite { a: size, b: size },
            FamilySpec::MultiStar { .. } => FamilySpec::MultiStar { q: size, m: size },
            FamilySpec::Lattice { dim, periodic, .. } => FamilySpec::Lattice {
                dim: *dim,
                l: size,
                periodic: *periodic,
            },
            FamilySpec::Toric { .. } => FamilySpec::Toric { l: size },
            FamilySpec::ConnectedMultiStar { .. } => FamilySpec::ConnectedMultiStar { l: size },
            FamilySpec::LineOfComplete { .. } => FamilySpec::LineOfComplete { m: size },
            FamilySpec::LineOfBipartite { .. } => FamilySpec::LineOfBipartite { m: size },
            FamilySpec::Toric3d { .. } => FamilySpec::Toric3d { l: size },
            FamilySpec::Custom { path } => FamilySpec::Custom { path: path.clone() },
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<String> = s.split([' ', ',', ':']).filter(|p| !p.is_empty()).map(String::from).collect();
        FamilySpec::parse_args(&parts)
    }
}

pub fn gen_family(spec: &FamilySpec) -> Result<Graph> {
    let g = match *spec {
        FamilySpec::Star { n } => star(n)?,
        FamilySpec::Complete { n } => complete(n)?,
        FamilySpec::CompleteBipartite { a, b } => complete_bipartite(a, b)?,
        FamilySpec::MultiStar { q, m } => multi_star(q, m)?,
        FamilySpec::Lattice { dim, l, periodic } => lattice(dim, l, periodic)?,
        FamilySpec::Toric { l } => toric(l)?,
        FamilySpec::ConnectedMultiStar { l } => connected_multi_star(l)?,
        FamilySpec::LineOfComplete { m } => line_graph(&complete(m)?).0,
        FamilySpec::LineOfBipartite { m } => line_graph(&complete_bipartite(m, m)?).0,
        FamilySpec::Toric3d { l } => toric3d(l)?,
        FamilySpec::Custom { ref path } => Graph::load(Path::new(path))?,
    };
    let mut g = g;
    if !matches!(spec, FamilySpec::Custom { .. }) {
        g.name = spec.label();
    }
    Ok(g)
}

fn need(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameters(msg()))
    }
}

pub fn star(n: usize) -> Result<Graph> {
    need(n >= 2, || format!("star needs n >= 2, got {n}"))?;
    Graph::new(n, (1..n).map(|v| (0, v)), format!("star({n})"))
}

pub fn complete(n: usize) -> Result<Graph> {
    need(n >= 1, || "complete graph needs n >= 1".into())?;
    Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))), format!("complete({n})"))
}

pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    need(a >= 1 && b >= 1, || "complete bipartite graph needs nonempty parts".into())?;
    Graph::new(
        a + b,
        (0..a).flat_map(|x| (0..b).map(move |y| (x, a + y))),
        format!("complete_bipartite({a},{b})"),
    )?
    .with_bipartition(a)
}

pub fn multi_star(q: usize, m: usize) -> Result<Graph> {
    need(m >= 2, || format!("multi-star components need m >= 2, got {m}"))?;
    need(q >= m, || format!("multi-star requires q >= m, got q={q}, m={m}"))?;
    Graph::new(
        q * m,
        (0..q).flat_map(|c| (1..m).map(move |v| (c * m, c * m + v))),
        format!("multi_star({q},{m})"),
    )
}

pub fn lattice(dim: usize, l: usize, periodic: bool) -> Result<Graph> {
    need(dim >= 1, || "lattice dimension must be >= 1".into())?;
    if periodic {
        need(l >= 3, || format!("periodic lattice needs L >= 3 to stay simple, got {l}"))?;
    } else {
        need(l >= 2, || format!("open lattice needs L >= 2, got {l}"))?;
    }
    let n = l
        .checked_pow(dim as u32)
        .filter(|&n| n <= 1 << 20)
        .ok_or_else(|| Error::InvalidParameters("lattice too large".into()))?;
    let mut edges = Vec::new();
    for v in 0..n {
        let mut stride = 1;
        for _ in 0..dim {
            let c = (v / stride) % l;
            if c + 1 < l {
                edges.push((v, v + stride));
            } else if periodic {
                edges.push((v + stride - l * stride, v));
            }
            stride *= l;
        }
    }
    Graph::new(n, edges, format!("lattice({dim},{l})"))
}

/// Index of 2D toric label `(i, j, d)`; `i, j` are 1-indexed, `y` selects
/// the vertical-edge layer.
pub fn toric_index(l: usize, i: usize, j: usize, y: bool) -> usize {
    let (i, j) = (wrap(i, l), wrap(j, l));
    (if y { l * l } else { 0 }) + (j - 1) * l + (i - 1)
}

/// Inverse of [`toric_index`].
pub fn toric_label(l: usize, v: usize) -> (usize, usize, bool) {
    let y = v >= l * l;
    let r = v % (l * l);
    (r % l + 1, r / l + 1, y)
}

/// Index of 3D label `(i, j, k)`, all 1-indexed mod `L`.
pub fn toric3d_index(l: usize, i: usize, j: usize, k: usize) -> usize {
    let (i, j, k) = (wrap(i, l), wrap(j, l), wrap(k, l));
    (k - 1) * l * l + (j - 1) * l + (i - 1)
}

pub fn toric3d_label(l: usize, v: usize) -> (usize, usize, usize) {
    (v % l + 1, (v / l) % l + 1, v / (l * l) + 1)
}

/// Maps any integer label (including 0 and L+1) into `1..=L`.
pub fn wrap(i: usize, l: usize) -> usize {
    (i + l - 1) % l + 1
}

fn delta(a: usize, b: usize, l: usize) -> bool {
    wrap(a, l) == wrap(b, l)
}

fn theta(a: usize, b: usize) -> bool {
    a <= b
}

/// Entry of the toric adjacency formula: four δ/θ terms summed mod 2.
fn toric_entry(l: usize, (i, j, y1): (usize, usize, bool), (li, m, y2): (usize, usize, bool)) -> bool {
    let mut acc = false;
    if !y1 && !y2 && delta(m, j, l) {
        acc ^= (delta(li, l, l) && theta(i, l - 1)) ^ (delta(i, l, l) && theta(li, l - 1));
    }
    if y1 && y2 && delta(m, j, l) {
        acc ^= (delta(i, 1, l) && theta(2, li)) ^ (delta(li, 1, l) && theta(2, i));
    }
    if y1 && !y2 {
        let cols = delta(m, j, l) ^ delta(m + l - 1, j, l);
        acc ^= cols && theta(li + 1, i) && theta(2, i);
    }
    if !y1 && y2 {
        let cols = delta(m, j, l) ^ delta(j + l - 1, m, l);
        acc ^= cols && theta(i + 1, li) && theta(i, l - 1);
    }
    acc
}

/// Toric graph on `2L^2` vertices, built entry by entry from its adjacency
/// formula.
pub fn toric(l: usize) -> Result<Graph> {
    need(l >= 2, || format!("toric graph needs L >= 2, got {l}"))?;
    let n = 2 * l * l;
    let mut a = Gf2Matrix::zeros(n, n);
    for u in 0..n {
        for v in 0..n {
            if toric_entry(l, toric_label(l, u), toric_label(l, v)) {
                a.set(u, v, true);
            }
        }
    }
    Graph::from_adjacency(&a, format!("toric({l})"))
}

/// Entry of the generalized toric adjacency formula, summed mod 2.
fn toric3d_entry(l: usize, (i1, j1, k1): (usize, usize, usize), (i2, j2, k2): (usize, usize, usize)) -> bool {
    let mut acc = false;
    if delta(j1, j2, l) && delta(k1, k2, l) {
        acc ^= (i1 == 1 && theta(2, i2)) ^ (i2 == 1 && theta(2, i1));
    }
    if delta(j1, j2, l) {
        acc ^= delta(k1, k2 + 1, l) && theta(i2, i1) && theta(2, i2);
        acc ^= delta(k2, k1 + 1, l) && theta(i1, i2) && theta(2, i1);
    }
    acc ^= delta(j1, j2 + 1, l) && delta(k1, k2 + 1, l) && theta(i2, i1) && theta(2, i2);
    acc ^= delta(j2, j1 + 1, l) && delta(k2, k1 + 1, l) && theta(i1, i2) && theta(2, i1);
    acc
}

/// Generalized toric graph on `L^3` vertices.
pub fn toric3d(l: usize) -> Result<Graph> {
    need(l >= 2, || format!("toric3d graph needs L >= 2, got {l}"))?;
    let n = l * l * l;
    let mut a = Gf2Matrix::zeros(n, n);
    for u in 0..n {
        for v in 0..n {
            if toric3d_entry(l, toric3d_label(l, u), toric3d_label(l, v)) {
                a.set(u, v, true);
            }
        }
    }
    Graph::from_adjacency(&a, format!("toric3d({l})"))
}

/// Connected multi-star graph, realization `cmstar-variant-1`: star columns
/// as in the toric graph, plus each non-hub `(i,j,y)` joined to
/// `(i-1,j,x)` and `(i-1,j+1,x)`.
pub fn connected_multi_star(l: usize) -> Result<Graph> {
    need(l >= 3, || format!("connected multi-star needs L >= 3, got {l}"))?;
    let mut edges = Vec::new();
    for j in 1..=l {
        for i in 1..l {
            edges.push((toric_index(l, i, j, false), toric_index(l, l, j, false)));
        }
        for i in 2..=l {
            edges.push((toric_index(l, 1, j, true), toric_index(l, i, j, true)));
            edges.push((toric_index(l, i, j, true), toric_index(l, i - 1, j, false)));
            edges.push((toric_index(l, i, j, true), toric_index(l, i - 1, j + 1, false)));
        }
    }
    Graph::new(2 * l * l, edges, format!("connected_multi_star({l},{CMSTAR_VARIANT})"))
}

/// Line graph: vertex `e` of the result is edge `e` of `g`. Also returns
/// that correspondence.
pub fn line_graph(g: &Graph) -> (Graph, Vec<(usize, usize)>) {
    let map = g.edges().to_vec();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (e, &(u, v)) in map.iter().enumerate() {
        incident[u].push(e);
        incident[v].push(e);
    }
    let mut edges = BTreeSet::new();
    for list in &incident {
        for (a, &e) in list.iter().enumerate() {
            for &f in &list[a + 1..] {
                edges.insert((e.min(f), e.max(f)));
            }
        }
    }
    let lg = Graph::new(map.len(), edges, format!("line({})", g.name())).expect("line graph is simple");
    (lg, map)
}

/// Edge indicator of all edges incident to `v`.
pub fn s_vector(g: &Graph, v: usize) -> BitString {
    assert!(v < g.n(), "vertex {v} out of range");
    BitString::from_indices(
        g.n_edges(),
        g.edges().iter().enumerate().filter(|(_, &(a, b))| a == v || b == v).map(|(e, _)| e),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OddDegree {
    pub vertices: Vec<usize>,
    /// l_k = |V_k^o|.
    pub count: usize,
    /// Odd vertices in part X, when the graph declares a bipartition.
    pub count_x: Option<usize>,
    pub count_y: Option<usize>,
}

/// Odd-degree vertices of the edge subgraph selected by `k`.
pub fn odd_degree_vertices(g: &Graph, k: &BitString) -> Result<OddDegree> {
    if k.len() != g.n_edges() {
        return Err(Error::LengthMismatch {
            left: g.n_edges(),
            right: k.len(),
        });
    }
    let mut parity = vec![false; g.n()];
    for e in k.ones_iter() {
        let (u, v) = g.edges()[e];
        parity[u] ^= true;
        parity[v] ^= true;
    }
    let vertices: Vec<usize> = (0..g.n()).filter(|&v| parity[v]).collect();
    let count = vertices.len();
    let (count_x, count_y) = match g.bipartition() {
        Some(split) => {
            let x = vertices.iter().filter(|&&v| v < split).count();
            (Some(x), Some(count - x))
        }
        None => (None, None),
    };
    Ok(OddDegree {
        vertices,
        count,
        count_x,
        count_y,
    })
}

/// Erdős–Rényi G(n, p).
pub fn random_graph<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges, format!("random({n},{p})")).expect("random graph is simple")
}

/// G(n, p) conditioned on connectivity, by rejection (plus a random spanning
/// tree fallback after 64 tries).
pub fn random_connected_graph<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    for _ in 0..64 {
        let g = random_graph(n, p, rng);
        if g.is_connected() {
            return g;
        }
    }
    let mut edges: BTreeSet<(usize, usize)> = (1..n).map(|v| (rng.random_range(0..v), v)).collect();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.insert((u, v));
            }
        }
    }
    Graph::new(n, edges, format!("random_connected({n},{p})")).expect("simple")
}

/// Graph on `n` vertices whose edges are the set bits of `mask` over the
/// lexicographic pair order `(0,1), (0,2), ..., (n-2,n-1)`.
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    let edges: Vec<_> = pairs.enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| e).collect();
    Graph::new(n, edges, format!("mask({n},{mask:#x})")).expect("simple")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn star_adjacency_has_hub_row() {
        let a = star(4).unwrap().adjacency();
        assert_eq!(a.row(0), &bs("0111"));
        for r in 1..4 {
            assert_eq!(a.row(r), &bs("1000"));
        }
    }

    #[test]
    fn complete_adjacency_is_j_minus_i() {
        let a = complete(4).unwrap().adjacency();
        for r in 0..4 {
            for c in 0..4 {
                assert_eq!(a.get(r, c), r != c);
            }
        }
        assert_eq!(complete(6).unwrap().n_edges(), 15);
    }

    #[test]
    fn edgeless_graph() {
        let g = Graph::new(3, [], "empty").unwrap();
        assert_eq!(g.adjacency(), Gf2Matrix::zeros(3, 3));
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(Graph::new(3, [(0, 0)], "").is_err());
        assert!(Graph::new(3, [(0, 1), (1, 0)], "").is_err());
        assert!(Graph::new(3, [(0, 3)], "").is_err());
        assert!(multi_star(2, 3).is_err());
        assert!(lattice(2, 2, true).is_err());
    }

    #[test]
    fn multi_star_layout() {
        let g = multi_star(3, 3).unwrap();
        assert_eq!(g.n(), 9);
        assert_eq!(g.neighbors(3), vec![4, 5]);
        assert_eq!(g.components().len(), 3);
    }

    #[test]
    fn periodic_lattice_is_regular() {
        for (dim, l) in [(1, 5), (2, 3), (2, 4), (3, 3)] {
            let g = lattice(dim, l, true).unwrap();
            assert!(g.degrees().iter().all(|&d| d == 2 * dim), "D={dim} L={l}");
        }
        let open = lattice(2, 3, false).unwrap();
        assert_eq!(open.n_edges(), 12);
    }

    /// Toric neighbourhoods listed by hand from the star-plus-half-graph
    /// description.
    fn toric_by_description(l: usize) -> Graph {
        let mut edges = BTreeSet::new();
        let mut add = |a: usize, b: usize| {
            edges.insert((a.min(b), a.max(b)));
        };
        for j in 1..=l {
            for i in 1..l {
                add(toric_index(l, i, j, false), toric_index(l, l, j, false));
            }
            for i in 2..=l {
                add(toric_index(l, 1, j, true), toric_index(l, i, j, true));
                for li in 1..i {
                    add(toric_index(l, i, j, true), toric_index(l, li, j, false));
                    add(toric_index(l, i, j, true), toric_index(l, li, j + 1, false));
                }
            }
        }
        Graph::new(2 * l * l, edges, "toric-by-hand").unwrap()
    }

    #[test]
    fn toric_formula_matches_description() {
        for l in 2..=6 {
            let g = toric(l).unwrap();
            assert_eq!(g.n(), 2 * l * l);
            assert_eq!(g.edges(), toric_by_description(l).edges(), "L={l}");
        }
    }

    #[test]
    fn toric_layers_are_stars() {
        for l in 2..=5 {
            let g = toric(l).unwrap();
            for y in [false, true] {
                let verts: Vec<usize> = (0..l * l).map(|v| v + if y { l * l } else { 0 }).collect();
                let sub = g.induced(&verts);
                let comps = sub.components();
                assert_eq!(comps.len(), l);
                for c in comps {
                    assert_eq!(c.len(), l);
                    let s = sub.induced(&c);
                    assert_eq!(s.n_edges(), l - 1);
                    assert_eq!(s.max_degree(), l - 1);
                }
            }
        }
    }

    #[test]
    fn toric_column_identities() {
        for l in 2..=6 {
            let g = toric(l).unwrap();
            let a = g.adjacency();
            let n = g.n();
            for j in 1..=l {
                let hub_x = BitString::basis(n, toric_index(l, l, j, false));
                let expect = BitString::from_indices(n, (1..l).map(|i| toric_index(l, i, j, false)));
                assert_eq!(a.mat_vec(&hub_x).unwrap(), expect);

                let hub_y = BitString::basis(n, toric_index(l, 1, j, true));
                let expect = BitString::from_indices(n, (2..=l).map(|i| toric_index(l, i, j, true)));
                assert_eq!(a.mat_vec(&hub_y).unwrap(), expect);
            }
        }
    }

    fn toric3d_by_description(l: usize) -> Graph {
        let mut a = Gf2Matrix::zeros(l * l * l, l * l * l);
        let mut toggle = |u: usize, v: usize| {
            a.flip(u, v);
            a.flip(v, u);
        };
        for k in 1..=l {
            for j in 1..=l {
                for i in 2..=l {
                    toggle(toric3d_index(l, 1, j, k), toric3d_index(l, i, j, k));
                }
                // (i1,j1,k1) ~ (i2,j2,k2) for k1 = k2+1, j1 in {j2, j2+1}, 2 <= i2 <= i1
                for i1 in 2..=l {
                    for i2 in 2..=i1 {
                        toggle(toric3d_index(l, i1, j, k + 1), toric3d_index(l, i2, j, k));
                        toggle(toric3d_index(l, i1, j + 1, k + 1), toric3d_index(l, i2, j, k));
                    }
                }
            }
        }
        Graph::from_adjacency(&a, "toric3d-by-hand").unwrap()
    }

    #[test]
    fn toric3d_formula_matches_description() {
        for l in 2..=4 {
            let g = toric3d(l).unwrap();
            assert_eq!(g.n(), l * l * l);
            assert_eq!(g.edges(), toric3d_by_description(l).edges(), "L={l}");
        }
    }

    #[test]
    fn toric3d_layers_are_stars() {
        let l = 3;
        let g = toric3d(l).unwrap();
        for k in 1..=l {
            let verts: Vec<usize> = (0..l * l).map(|v| (k - 1) * l * l + v).collect();
            let comps = g.induced(&verts).components();
            assert_eq!(comps.len(), l);
        }
    }

    #[test]
    fn cmstar_degrees() {
        let l = 4;
        let g = connected_multi_star(l).unwrap();
        assert!(g.is_connected());
        for j in 1..=l {
            for i in 2..=l {
                assert_eq!(g.degree(toric_index(l, i, j, true)), 3);
            }
            assert_eq!(g.degree(toric_index(l, 1, j, true)), l - 1);
            assert_eq!(g.degree(toric_index(l, l, j, false)), l - 1);
        }
    }

    #[test]
    fn line_graph_small_cases() {
        let path = Graph::new(3, [(0, 1), (1, 2)], "path").unwrap();
        let (lg, map) = line_graph(&path);
        assert_eq!(lg.n(), 2);
        assert_eq!(lg.edges(), &[(0, 1)]);
        assert_eq!(map, vec![(0, 1), (1, 2)]);

        for m in 4..=6 {
            let (t, _) = line_graph(&complete(m).unwrap());
            assert_eq!(t.n(), m * (m - 1) / 2);
            assert!(t.degrees().iter().all(|&d| d == 2 * (m - 2)));
        }
        let rook = gen_family(&FamilySpec::LineOfBipartite { m: 4 }).unwrap();
        assert_eq!(rook.n(), 16);
        assert!(rook.degrees().iter().all(|&d| d == 6));
        assert_eq!(gen_family(&FamilySpec::LineOfBipartite { m: 6 }).unwrap().n(), 36);
    }

    #[test]
    fn bipartite_edge_order() {
        let g = complete_bipartite(3, 3).unwrap();
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(g.edge_index(x, 3 + y), Some(x * 3 + y));
            }
        }
    }

    #[test]
    fn s_vectors() {
        let k4 = complete(4).unwrap();
        assert_eq!(s_vector(&k4, 0), bs("111000"));
        let g = Graph::new(3, [(0, 1)], "").unwrap();
        assert!(s_vector(&g, 2).is_zero());
        let kmm = complete_bipartite(4, 4).unwrap();
        for v in 0..8 {
            assert_eq!(s_vector(&kmm, v).weight(), 4);
        }
    }

    #[test]
    fn odd_degree_examples() {
        let k4 = complete(4).unwrap();
        assert_eq!(odd_degree_vertices(&k4, &BitString::zeros(6)).unwrap().count, 0);
        // triangle 0-1-2: edges (0,1),(0,2),(1,2) are indices 0,1,3
        let tri = BitString::from_indices(6, [0, 1, 3]);
        assert!(odd_degree_vertices(&k4, &tri).unwrap().vertices.is_empty());
        let one = BitString::basis(6, 5);
        let od = odd_degree_vertices(&k4, &one).unwrap();
        assert_eq!(od.vertices, vec![2, 3]);
        assert_eq!(od.count, 2);
        let kmm = complete_bipartite(2, 2).unwrap();
        let od = odd_degree_vertices(&kmm, &BitString::basis(4, 0)).unwrap();
        assert_eq!((od.count_x, od.count_y), (Some(1), Some(1)));
    }

    #[test]
    fn edge_list_round_trip() {
        let g = toric(3).unwrap();
        let text = g.to_edge_list();
        let back = Graph::read_edge_list(std::io::Cursor::new(format!("# comment\n{text}")), "x").unwrap();
        assert_eq!(back.edges(), g.edges());
        assert!(Graph::read_edge_list(std::io::Cursor::new("3 1\n1 0\n"), "x").is_err());
        assert!(Graph::read_edge_list(std::io::Cursor::new("3 2\n0 1\n"), "x").is_err());
    }

    #[test]
    fn spec_parsing() {
        assert_eq!("mstar 3 3".parse::<FamilySpec>().unwrap(), FamilySpec::MultiStar { q: 3, m: 3 });
        assert_eq!(
            "lattice 2 4 open".parse::<FamilySpec>().unwrap(),
            FamilySpec::Lattice {
                dim: 2,
                l: 4,
                periodic: false
            }
        );
        assert!("toric".parse::<FamilySpec>().is_err());
        assert!("blob 3".parse::<FamilySpec>().is_err());
    }

    #[test]
    fn mask_graphs_cover_all_pairs() {
        let g = graph_from_mask(4, 0b111111);
        assert_eq!(g.edges(), complete(4).unwrap().edges());
    }
}
