//! Diagrams of explicit finite-dimensional vector spaces over a finite
//! poset, their limits, and their derived limits.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::holim::linalg::{from_columns, solve_in_basis, Matrix};
use crate::laurent::Rat;

#[derive(Clone, Debug)]
pub struct LinearArrow {
    pub from: usize,
    pub to: usize,
    /// `dim(to) x dim(from)`.
    pub matrix: Matrix,
}

/// A functor from a finite poset (given by generating arrows) to vector
/// spaces. All paths between two objects must induce the same map.
#[derive(Clone, Debug, Default)]
pub struct LinearDiagram {
    pub names: Vec<String>,
    pub dims: Vec<usize>,
    pub arrows: Vec<LinearArrow>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearLimit {
    pub dim: usize,
    /// Vectors in the product of all objects, in object order.
    pub basis: Vec<Vec<Rat>>,
}

impl LinearDiagram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_object(&mut self, name: &str, dim: usize) -> usize {
        self.names.push(name.to_string());
        self.dims.push(dim);
        self.dims.len() - 1
    }

    pub fn add_arrow(&mut self, from: usize, to: usize, matrix: Matrix) -> Result<()> {
        if from >= self.dims.len() || to >= self.dims.len() {
            return Err(Error::Malformed("arrow endpoint out of range".into()));
        }
        if matrix.rows() != self.dims[to] || matrix.cols() != self.dims[from] {
            return Err(Error::Malformed(format!(
                "{} -> {}: matrix is {}x{}, expected {}x{}",
                self.names[from],
                self.names[to],
                matrix.rows(),
                matrix.cols(),
                self.dims[to],
                self.dims[from]
            )));
        }
        self.arrows.push(LinearArrow { from, to, matrix });
        Ok(())
    }

    fn topological_order(&self) -> Result<Vec<usize>> {
        let n = self.dims.len();
        let mut indeg = vec![0; n];
        for a in &self.arrows {
            indeg[a.to] += 1;
        }
        let mut ready: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(x) = ready.pop() {
            order.push(x);
            for a in self.arrows.iter().filter(|a| a.from == x) {
                indeg[a.to] -= 1;
                if indeg[a.to] == 0 {
                    ready.push(a.to);
                }
            }
        }
        if order.len() != n {
            return Err(Error::NotFunctorial("arrows contain a cycle".into()));
        }
        Ok(order)
    }

    /// `maps[x][y]` is the map induced by `x <= y`, if any. Fails when two
    /// paths disagree.
    pub fn composites(&self) -> Result<Vec<Vec<Option<Matrix>>>> {
        let order = self.topological_order()?;
        let pos: Vec<usize> = {
            let mut p = vec![0; order.len()];
            for (i, &x) in order.iter().enumerate() {
                p[x] = i;
            }
            p
        };
        let n = self.dims.len();
        let mut maps = vec![vec![None; n]; n];
        for x in 0..n {
            maps[x][x] = Some(Matrix::identity(self.dims[x]));
            for &y in order.iter().skip(pos[x] + 1) {
                let mut found: Option<Matrix> = None;
                for a in self.arrows.iter().filter(|a| a.to == y) {
                    let Some(m) = &maps[x][a.from] else { continue };
                    let via = a.matrix.mul(m);
                    match &found {
                        Some(f) if *f != via => {
                            return Err(Error::NotFunctorial(format!(
                                "two paths {} -> {} induce different maps",
                                self.names[x], self.names[y]
                            )))
                        }
                        Some(_) => {}
                        None => found = Some(via),
                    }
                }
                maps[x][y] = found;
            }
        }
        Ok(maps)
    }

    pub fn check_functorial(&self) -> Result<()> {
        self.composites().map(|_| ())
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "objects": self.names.iter().zip(&self.dims).map(|(n, d)| json!({"name": n, "dim": d})).collect::<Vec<_>>(),
            "arrows": self.arrows.iter().map(|a| json!([a.from, a.to])).collect::<Vec<_>>(),
        })
    }
}

/// Kernel of `prod_x D(x) -> prod_{x -> y} D(y)`, `(v) |-> v_y - D(x -> y) v_x`.
pub fn linear_limit(d: &LinearDiagram) -> Result<LinearLimit> {
    d.check_functorial()?;
    let offsets = prefix(&d.dims);
    let rows: usize = d.arrows.iter().map(|a| d.dims[a.to]).sum();
    let cols = offsets[d.dims.len()];
    let mut m = Matrix::zeros(rows, cols);
    let mut r = 0;
    for a in &d.arrows {
        m.put_block(r, offsets[a.from], &a.matrix.scale(&-Rat::one()));
        for i in 0..d.dims[a.to] {
            m.add_to(r + i, offsets[a.to] + i, &Rat::one());
        }
        r += d.dims[a.to];
    }
    let basis = m.kernel();
    Ok(LinearLimit {
        dim: basis.len(),
        basis,
    })
}

fn prefix(dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0];
    for d in dims {
        out.push(out.last().unwrap() + d);
    }
    out
}

/// The normalized cosimplicial (Roos) complex
/// `C^i = prod_{x_0 < ... < x_i} D(x_i)` with its differentials.
pub struct RoosComplex {
    /// Chains of length `i + 1` for each `i`.
    pub chains: Vec<Vec<Vec<usize>>>,
    /// `differentials[i] : C^i -> C^{i+1}`.
    pub differentials: Vec<Matrix>,
    pub dims: Vec<usize>,
    object_dims: Vec<usize>,
}

impl RoosComplex {
    pub fn build(d: &LinearDiagram, budget: Option<usize>) -> Result<Self> {
        let maps = d.composites()?;
        let n = d.dims.len();
        let below = |x: usize, y: usize| x != y && maps[x][y].is_some();
        let mut chains: Vec<Vec<Vec<usize>>> = vec![(0..n).map(|x| vec![x]).collect()];
        loop {
            let next: Vec<Vec<usize>> = chains
                .last()
                .unwrap()
                .iter()
                .flat_map(|c| {
                    let last = *c.last().unwrap();
                    (0..n).filter(move |&y| below(last, y)).map(move |y| {
                        let mut e = c.clone();
                        e.push(y);
                        e
                    })
                })
                .collect();
            if next.is_empty() {
                break;
            }
            chains.push(next);
        }
        let dims: Vec<usize> = chains
            .iter()
            .map(|cs| cs.iter().map(|c| d.dims[*c.last().unwrap()]).sum())
            .collect();
        if let Some(b) = budget {
            if let Some(i) = (0..dims.len()).find(|&i| dims[i] > b) {
                return Err(Error::BudgetExceeded(format!(
                    "cochain group C^{i} has dimension {} (budget {b}); dimensions {dims:?}",
                    dims[i]
                )));
            }
        }
        let mut differentials = Vec::new();
        for i in 0..chains.len().saturating_sub(1) {
            let src_off = offsets_of(&chains[i], &d.dims);
            let dst_off = offsets_of(&chains[i + 1], &d.dims);
            let index: HashMap<&[usize], usize> =
                chains[i].iter().enumerate().map(|(k, c)| (c.as_slice(), k)).collect();
            let mut m = Matrix::zeros(dims[i + 1], dims[i]);
            for (row_chain, c) in chains[i + 1].iter().enumerate() {
                let r0 = dst_off[row_chain];
                for j in 0..=i + 1 {
                    let mut face = c.clone();
                    face.remove(j);
                    let col_chain = index[face.as_slice()];
                    let c0 = src_off[col_chain];
                    let sign = if j % 2 == 0 { Rat::one() } else { -Rat::one() };
                    if j <= i {
                        for k in 0..d.dims[c[i + 1]] {
                            m.add_to(r0 + k, c0 + k, &sign);
                        }
                    } else {
                        let f = maps[c[i]][c[i + 1]].as_ref().unwrap();
                        m.put_block(r0, c0, &f.scale(&sign));
                    }
                }
            }
            differentials.push(m);
        }
        Ok(Self {
            chains,
            differentials,
            dims,
            object_dims: d.dims.clone(),
        })
    }

    /// `dim H^i` for every `i`.
    pub fn cohomology_dims(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.differentials.iter().map(Matrix::sparse_rank).collect();
        (0..self.dims.len())
            .map(|i| {
                let out = ranks.get(i).copied().unwrap_or(0);
                let inc = if i == 0 { 0 } else { ranks[i - 1] };
                self.dims[i] - out - inc
            })
            .collect()
    }

    /// Traces of a natural automorphism on each `H^i`; `action[x]` acts on
    /// `D(x)`.
    pub fn cohomology_traces(&self, actions: &[Vec<Matrix>]) -> Vec<Vec<Rat>> {
        let mut out = vec![Vec::new(); actions.len()];
        for i in 0..self.dims.len() {
            let z = match self.differentials.get(i) {
                Some(d) => d.kernel(),
                None => identity_columns(self.dims[i]),
            };
            let b: Vec<Vec<Rat>> = if i == 0 {
                Vec::new()
            } else {
                let d = &self.differentials[i - 1];
                (0..d.cols()).map(|j| d.column(j)).collect()
            };
            let mut cols = b.clone();
            cols.extend(z.iter().cloned());
            let all = from_columns(&cols, self.dims[i]);
            let picks = all.column_basis();
            let nb = picks.iter().filter(|&&p| p < b.len()).count();
            let basis = from_columns(
                &picks.iter().map(|&p| cols[p].clone()).collect::<Vec<_>>(),
                self.dims[i],
            );
            let reps: Vec<&Vec<Rat>> = picks.iter().filter(|&&p| p >= b.len()).map(|&p| &cols[p]).collect();
            let offs = offsets_of(&self.chains[i], &self.object_dims);
            for (g, per_object) in actions.iter().enumerate() {
                if reps.is_empty() {
                    out[g].push(Rat::zero());
                    continue;
                }
                let images: Vec<Vec<Rat>> = reps
                    .iter()
                    .map(|v| act(&self.chains[i], &offs, per_object, v))
                    .collect();
                let coords = solve_in_basis(&basis, &from_columns(&images, self.dims[i]))
                    .expect("automorphism preserves cocycles");
                let t = (0..reps.len()).fold(Rat::zero(), |acc, k| acc + coords.get(nb + k, k));
                out[g].push(t);
            }
        }
        out
    }
}

fn identity_columns(n: usize) -> Vec<Vec<Rat>> {
    (0..n)
        .map(|i| {
            let mut v = vec![Rat::zero(); n];
            v[i] = Rat::one();
            v
        })
        .collect()
}

fn offsets_of(chains: &[Vec<usize>], dims: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(chains.len());
    let mut o = 0;
    for c in chains {
        out.push(o);
        o += dims[*c.last().unwrap()];
    }
    out
}

fn act(chains: &[Vec<usize>], offs: &[usize], per_object: &[Matrix], v: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); v.len()];
    for (c, &o) in chains.iter().zip(offs) {
        let g = &per_object[*c.last().unwrap()];
        let img = g.apply(&v[o..o + g.cols()]);
        out[o..o + g.rows()].clone_from_slice(&img);
    }
    out
}

/// `dim lim^i D` for every `i`.
pub fn derived_limits(d: &LinearDiagram, budget: Option<usize>) -> Result<Vec<usize>> {
    Ok(RoosComplex::build(d, budget)?.cohomology_dims())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn proj(rows: usize, cols: usize) -> Matrix {
        let mut m = Matrix::zeros(rows, cols);
        for i in 0..rows.min(cols) {
            m.set(i, i, Rat::one());
        }
        m
    }

    #[test]
    fn isomorphism() {
        let mut d = LinearDiagram::new();
        let a = d.add_object("a", 3);
        let b = d.add_object("b", 3);
        d.add_arrow(a, b, Matrix::from_ints(&[&[0, 1, 0], &[1, 0, 0], &[1, 1, 1]]))
            .unwrap();
        assert_eq!(linear_limit(&d).unwrap().dim, 3);
        assert_eq!(derived_limits(&d, None).unwrap(), vec![3, 0]);
    }

    #[test]
    fn pullback_of_split_surjections() {
        for (a, b, c) in [(3, 4, 2), (2, 2, 2), (5, 1, 1), (4, 3, 0)] {
            let mut d = LinearDiagram::new();
            let x = d.add_object("a", a);
            let y = d.add_object("b", b);
            let z = d.add_object("c", c);
            d.add_arrow(x, z, proj(c, a)).unwrap();
            d.add_arrow(y, z, proj(c, b)).unwrap();
            assert_eq!(linear_limit(&d).unwrap().dim, a + b - c);
            assert_eq!(derived_limits(&d, None).unwrap(), vec![a + b - c, 0]);
        }
    }

    #[test]
    fn punctured_square_with_zero_legs() {
        let mut d = LinearDiagram::new();
        let x = d.add_object("1", 0);
        let y = d.add_object("2", 0);
        let z = d.add_object("12", 1);
        d.add_arrow(x, z, Matrix::zeros(1, 0)).unwrap();
        d.add_arrow(y, z, Matrix::zeros(1, 0)).unwrap();
        assert_eq!(derived_limits(&d, None).unwrap(), vec![0, 1]);
    }

    #[test]
    fn chain_of_surjections() {
        let mut d = LinearDiagram::new();
        let p2 = d.add_object("P2", 5);
        let p1 = d.add_object("P1", 2);
        d.add_arrow(p2, p1, proj(2, 5)).unwrap();
        assert_eq!(linear_limit(&d).unwrap().dim, 5);
    }

    #[test]
    fn non_functorial_square() {
        let mut d = LinearDiagram::new();
        let o: Vec<usize> = ["a", "b", "c", "d"].iter().map(|n| d.add_object(n, 1)).collect();
        let one = Matrix::from_ints(&[&[1]]);
        d.add_arrow(o[0], o[1], one.clone()).unwrap();
        d.add_arrow(o[0], o[2], one.clone()).unwrap();
        d.add_arrow(o[1], o[3], one.clone()).unwrap();
        d.add_arrow(o[2], o[3], Matrix::from_ints(&[&[2]])).unwrap();
        assert!(matches!(linear_limit(&d), Err(Error::NotFunctorial(_))));
        assert!(matches!(
            d.add_arrow(o[0], o[3], Matrix::zeros(2, 1)),
            Err(Error::Malformed(_))
        ));
    }

    #[test]
    fn budget_refusal() {
        let mut d = LinearDiagram::new();
        d.add_object("big", 50);
        assert!(matches!(derived_limits(&d, Some(10)), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn swap_traces() {
        // k^2 -> k^2 <- k^2, all identities, with the swap acting everywhere
        let mut d = LinearDiagram::new();
        let o: Vec<usize> = ["a", "b", "c"].iter().map(|n| d.add_object(n, 2)).collect();
        d.add_arrow(o[0], o[2], Matrix::identity(2)).unwrap();
        d.add_arrow(o[1], o[2], Matrix::identity(2)).unwrap();
        let swap = Matrix::from_ints(&[&[0, 1], &[1, 0]]);
        let roos = RoosComplex::build(&d, None).unwrap();
        let t = roos.cohomology_traces(&[vec![Matrix::identity(2); 3], vec![swap; 3]]);
        assert_eq!(t[0], vec![Rat::from_integer(2.into()), Rat::zero()]);
        assert_eq!(t[1], vec![Rat::zero(), Rat::zero()]);
    }
}
