//! Independent reference computations for tests.
//!
//! Nothing here depends on the production crates. The renormalization oracle
//! eliminates interior vertices one at a time in exact rational arithmetic
//! (classic Kron reduction), so it shares no code path with the dense
//! pseudoinverse Schur complement used by `eigenform-core`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(num: i64, den: i64) -> Q {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().expect("rational fits in f64")
}

/// Unordered pairs `(a, b)`, `a < b`, of `0..n` in lexicographic order.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            out.push((a, b));
        }
    }
    out
}

/// Conductance matrix (symmetric, off-diagonal conductances only; the
/// diagonal is implicit) of the level-one network `Σ_i r_i E(v∘ψ_i)`.
fn level_one_conductances(
    cells: &[Vec<usize>],
    n_total: usize,
    weights: &[Q],
    coeffs: &[Q],
) -> Vec<Vec<Q>> {
    let n = cells[0].len();
    let mut g = vec![vec![Q::zero(); n_total]; n_total];
    for (cell, w) in cells.iter().zip(weights) {
        for ((a, b), c) in pairs(n).into_iter().zip(coeffs) {
            let (x, y) = (cell[a], cell[b]);
            let add = w * c;
            g[x][y] += &add;
            g[y][x] += &add;
        }
    }
    g
}

/// Eliminates vertices `keep..` from a conductance network one by one
/// (star-mesh transform) and returns the conductances among `0..keep`.
pub fn kron_reduce(mut g: Vec<Vec<Q>>, keep: usize) -> Vec<Vec<Q>> {
    let mut alive: Vec<usize> = (0..g.len()).collect();
    while alive.len() > keep {
        let x = alive.pop().unwrap();
        let degree: Q = alive.iter().fold(Q::zero(), |acc, &y| acc + &g[x][y]);
        if degree.is_zero() {
            continue;
        }
        for i in 0..alive.len() {
            for j in i + 1..alive.len() {
                let (a, b) = (alive[i], alive[j]);
                if g[x][a].is_zero() || g[x][b].is_zero() {
                    continue;
                }
                let add = &g[x][a] * &g[x][b] / &degree;
                g[a][b] += &add;
                g[b][a] += &add;
            }
        }
    }
    g.truncate(keep);
    for row in &mut g {
        row.truncate(keep);
    }
    g
}

/// Coefficients of the renormalized form on the boundary `0..n`, in
/// lexicographic pair order.
pub fn renormalize(cells: &[Vec<usize>], n_total: usize, weights: &[Q], coeffs: &[Q]) -> Vec<Q> {
    let n = cells[0].len();
    let g = level_one_conductances(cells, n_total, weights, coeffs);
    let reduced = kron_reduce(g, n);
    pairs(n)
        .into_iter()
        .map(|(a, b)| reduced[a][b].clone())
        .collect()
}

pub fn renormalize_f64(
    cells: &[Vec<usize>],
    n_total: usize,
    weights: &[Q],
    coeffs: &[Q],
) -> Vec<f64> {
    renormalize(cells, n_total, weights, coeffs)
        .iter()
        .map(to_f64)
        .collect()
}

/// Plain union-find, used to cross-check connectivity decisions.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }

    pub fn count(&mut self) -> usize {
        (0..self.parent.len())
            .filter(|&x| self.find(x) == x)
            .count()
    }
}

/// The level-one network with, inside every cell, the images of each
/// boundary component glued into one vertex, reduced onto the glued classes
/// of the boundary. Boundary vertices of one component are glued as well,
/// since the constrained form is only defined for functions constant on
/// components.
#[derive(Debug, Clone)]
pub struct Quotient {
    /// Class of each boundary vertex; classes are numbered by first
    /// appearance.
    pub boundary_class: Vec<usize>,
    /// Conductances among boundary classes.
    pub conductance: Vec<Vec<Q>>,
}

impl Quotient {
    pub fn n_classes(&self) -> usize {
        self.conductance.len()
    }

    /// Energy of the function taking value `values[c]` on class `c`.
    pub fn energy(&self, values: &[Q]) -> Q {
        let k = self.n_classes();
        let mut total = Q::zero();
        for a in 0..k {
            for b in a + 1..k {
                let d = &values[a] - &values[b];
                total += &self.conductance[a][b] * &d * &d;
            }
        }
        total
    }
}

pub fn quotient_constrained(
    cells: &[Vec<usize>],
    n_total: usize,
    weights: &[Q],
    coeffs: &[Q],
    components: &[Vec<usize>],
) -> Quotient {
    let n = cells[0].len();
    let mut uf = UnionFind::new(n_total);
    for comp in components {
        for w in comp.windows(2) {
            uf.union(w[0], w[1]);
        }
    }
    for cell in cells {
        for comp in components {
            for w in comp.windows(2) {
                uf.union(cell[w[0]], cell[w[1]]);
            }
        }
    }
    let mut class_of_root = std::collections::HashMap::new();
    let mut boundary_class = Vec::with_capacity(n);
    for v in 0..n {
        let root = uf.find(v);
        let next = class_of_root.len();
        boundary_class.push(*class_of_root.entry(root).or_insert(next));
    }
    let k = class_of_root.len();
    for v in n..n_total {
        let root = uf.find(v);
        let next = class_of_root.len();
        class_of_root.entry(root).or_insert(next);
    }
    let total = class_of_root.len();
    let fine = level_one_conductances(cells, n_total, weights, coeffs);
    let mut g = vec![vec![Q::zero(); total]; total];
    for x in 0..n_total {
        for y in 0..n_total {
            let (cx, cy) = (class_of_root[&uf.find(x)], class_of_root[&uf.find(y)]);
            if cx != cy {
                g[cx][cy] += &fine[x][y];
            }
        }
    }
    Quotient {
        boundary_class,
        conductance: kron_reduce(g, k),
    }
}

/// Exact check that `lhs == rho * rhs` coefficientwise for some rational rho;
/// returns rho.
pub fn common_ratio(lhs: &[Q], rhs: &[Q]) -> Option<Q> {
    let mut rho: Option<Q> = None;
    for (l, r) in lhs.iter().zip(rhs) {
        if r.is_zero() {
            if !l.is_zero() {
                return None;
            }
            continue;
        }
        let ratio = l / r;
        match &rho {
            None => rho = Some(ratio),
            Some(prev) if *prev == ratio => {}
            Some(_) => return None,
        }
    }
    rho.filter(|r| r.is_positive())
}

pub fn one() -> Q {
    Q::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gasket_quotient() {
        // Components {P1, P2}, {P3} with the uniform form: the constrained
        // energy of u = (a, a, b) is (4/9)(a - b)^2.
        let cells = vec![vec![0, 3, 4], vec![3, 1, 5], vec![4, 5, 2]];
        let third = q(1, 3);
        let qt = quotient_constrained(
            &cells,
            6,
            &[one(), one(), one()],
            &[third.clone(), third.clone(), third],
            &[vec![0, 1], vec![2]],
        );
        assert_eq!(qt.boundary_class, vec![0, 0, 1]);
        assert_eq!(qt.energy(&[one(), Q::zero()]), q(4, 9));
    }

    #[test]
    fn series_resistors() {
        // 0 -- 2 -- 1 with conductances 1 and 2: effective 2/3.
        let g = vec![
            vec![q(0, 1), q(0, 1), q(1, 1)],
            vec![q(0, 1), q(0, 1), q(2, 1)],
            vec![q(1, 1), q(2, 1), q(0, 1)],
        ];
        let r = kron_reduce(g, 2);
        assert_eq!(r[0][1], q(2, 3));
    }

    #[test]
    fn union_find_counts() {
        let mut uf = UnionFind::new(4);
        uf.union(0, 1);
        uf.union(2, 3);
        assert_eq!(uf.count(), 2);
        uf.union(1, 3);
        assert_eq!(uf.count(), 1);
    }
}
