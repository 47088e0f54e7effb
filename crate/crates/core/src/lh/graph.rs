use std::collections::BTreeSet;

use num_traits::Zero;

use crate::complex::LiftedComplex;
use crate::exact::{QMatrix, QVector, Rational};

/// Label sets over `𝓛 ∪ 𝒦`, with `𝓛` as `0..L` and `𝒦` as `L..L+K`.
pub type LabelSet = u128;

pub fn label_count(s: LabelSet) -> u32 {
    s.count_ones()
}

pub fn full_set(n: usize) -> LabelSet {
    if n == 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

/// One side of the product graph: vertex 0 is the abstract origin.
#[derive(Debug, Clone)]
pub struct SideGraph {
    pub points: Vec<Option<QVector>>,
    pub labels: Vec<LabelSet>,
    pub adj: Vec<Vec<usize>>,
}

impl SideGraph {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn find(&self, p: &[Rational]) -> Option<usize> {
        self.points.iter().position(|q| q.as_ref().map(|q| q.as_slice()) == Some(p))
    }

    pub fn edges(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }
}

/// Builds the 1-skeleton of a lifted complex with labels
/// `{regions containing the point} ∪ {zero coordinates}`.
///
/// `region_offset` and `zero_offset` place the two label alphabets.
pub(crate) fn side_graph(lc: &LiftedComplex, region_offset: usize, zero_offset: usize) -> SideGraph {
    let k = lc.dim();
    let vertices = lc.vertices();
    let mut points: Vec<Option<QVector>> = vec![None];
    points.extend(vertices.iter().cloned().map(Some));
    let label_of = |p: &QVector| -> LabelSet {
        let mut s: LabelSet = 0;
        for l in lc.regions_containing(p) {
            s |= 1 << (region_offset + l);
        }
        for (i, q) in p.iter().enumerate() {
            if q.is_zero() {
                s |= 1 << (zero_offset + i);
            }
        }
        s
    };
    let mut labels: Vec<LabelSet> = vec![0];
    for i in 0..k {
        labels[0] |= 1 << (zero_offset + i);
    }
    labels.extend(vertices.iter().map(label_of));
    let index = |p: &QVector| 1 + vertices.binary_search(p).expect("complex vertex");
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for i in 0..k {
        edges.insert((0, index(&QVector::unit(k, i))));
    }
    let eq_normal = QVector::new(vec![Rational::from_integer(1.into()); k]);
    for cell in lc.regions.iter().flatten() {
        let vs = cell.vertices();
        let ineqs = cell.h().ineqs();
        let tight: Vec<Vec<usize>> = vs
            .iter()
            .map(|v| (0..ineqs.len()).filter(|&t| ineqs[t].is_tight(v)).collect())
            .collect();
        for a in 0..vs.len() {
            for b in a + 1..vs.len() {
                let common: Vec<QVector> = tight[a]
                    .iter()
                    .filter(|t| tight[b].contains(t))
                    .map(|&t| ineqs[t].normal.clone())
                    .chain(std::iter::once(eq_normal.clone()))
                    .collect();
                if k < 2 || QMatrix::from_qvectors(&common, k).expect("dims").rank() != k - 1 {
                    continue;
                }
                // subdivide at complex vertices lying inside the segment
                let (p, q) = (&vs[a], &vs[b]);
                let d = q.sub(p);
                let mut on: Vec<(Rational, usize)> = vec![(Rational::zero(), index(p)), (Rational::from_integer(1.into()), index(q))];
                for r in &vertices {
                    if r == p || r == q {
                        continue;
                    }
                    let j = d.iter().position(|x| !x.is_zero()).expect("distinct endpoints");
                    let t = (&r[j] - &p[j]) / &d[j];
                    if t > Rational::zero() && t < Rational::from_integer(1.into()) && &p.add(&d.scale(&t)) == r {
                        on.push((t, index(r)));
                    }
                }
                on.sort();
                for w in on.windows(2) {
                    let (x, y) = (w[0].1, w[1].1);
                    edges.insert((x.min(y), x.max(y)));
                }
            }
        }
    }
    let mut adj = vec![Vec::new(); points.len()];
    for (a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    for n in adj.iter_mut() {
        n.sort();
    }
    SideGraph { points, labels, adj }
}

/// The labeled graphs over `Δ(𝓛)` (side 1) and `Δ(𝒦)` (side 2).
#[derive(Debug, Clone)]
pub struct ProductGraph {
    pub side1: SideGraph,
    pub side2: SideGraph,
    /// `𝓛` labels followed by `𝒦` labels.
    pub label_names: Vec<String>,
    pub n1: usize,
    pub n2: usize,
}

impl ProductGraph {
    pub fn all_labels(&self) -> LabelSet {
        full_set(self.n1 + self.n2)
    }

    pub fn labels(&self, v: (usize, usize)) -> LabelSet {
        self.side1.labels[v.0] | self.side2.labels[v.1]
    }

    pub fn is_fully_labeled(&self, v: (usize, usize)) -> bool {
        self.labels(v) == self.all_labels()
    }

    pub fn label_id(&self, name: &str) -> Option<usize> {
        self.label_names.iter().position(|n| n == name)
    }

    /// `"{a,b}"` with zero-coordinate labels first.
    pub fn render_side(&self, side: usize, v: usize) -> String {
        let (s, zero_lo, zero_hi) = match side {
            1 => (self.side1.labels[v], 0, self.n1),
            _ => (self.side2.labels[v], self.n1, self.n1 + self.n2),
        };
        let mut names: Vec<&str> = Vec::new();
        for i in (zero_lo..zero_hi).chain((0..zero_lo).chain(zero_hi..self.n1 + self.n2)) {
            if s & (1 << i) != 0 {
                names.push(&self.label_names[i]);
            }
        }
        format!("{{{}}}", names.join(","))
    }

    /// `"{Δ(𝒦)-side labels}×{Δ(𝓛)-side labels}"`.
    pub fn render(&self, v: (usize, usize)) -> String {
        format!("{}×{}", self.render_side(2, v.1), self.render_side(1, v.0))
    }
}

/// `y_side`: regions of player 1's candidates over `Δ(𝒦)`;
/// `x_side`: regions of player 2's candidates over `Δ(𝓛)`.
pub fn build_graphs(y_side: &LiftedComplex, x_side: &LiftedComplex) -> ProductGraph {
    let n1 = y_side.labels.len();
    let n2 = x_side.labels.len();
    assert!(n1 + n2 <= 128, "label alphabet too large");
    let side1 = side_graph(x_side, n1, 0);
    let side2 = side_graph(y_side, 0, n1);
    let mut label_names = y_side.labels.clone();
    label_names.extend(x_side.labels.iter().cloned());
    ProductGraph {
        side1,
        side2,
        label_names,
        n1,
        n2,
    }
}
