//! Finite matrix groups: closure, element orders, subgroups.
//!
//! A group is closed once by breadth-first search over right
//! multiplication by its generators. The search also records the right
//! Cayley graph and a word in the generators for every element, so any
//! later product inside the group is a walk through index tables rather
//! than a matrix multiplication.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Default bound on the number of elements a closure may produce.
pub const DEFAULT_CAP: usize = 100_000;

/// A finite group of invertible matrices together with its generators.
#[derive(Clone, Debug)]
pub struct FiniteMatrixGroup<S: Scalar> {
    dim: usize,
    ctx: S::Ctx,
    elements: Vec<Matrix<S>>,
    index: HashMap<Matrix<S>, usize>,
    /// Element indices of the generators, in the order supplied.
    generators: Vec<usize>,
    /// `right[g][x]` is the index of `elements[x] · generator g`.
    right: Vec<Vec<usize>>,
    /// Generator positions spelling each element from the identity.
    words: Vec<Vec<u32>>,
    orders: Vec<usize>,
}

impl<S: Scalar> FiniteMatrixGroup<S> {
    /// The group generated by `generators`, failing if it grows beyond
    /// `cap` elements.
    pub fn closure(generators: &[Matrix<S>], cap: usize) -> Result<Self> {
        let first = generators.first().ok_or(Error::NoGenerators)?;
        let (dim, ctx) = (first.dim(), first.ctx());
        for g in generators {
            if g.dim() != dim || g.ctx() != ctx {
                return Err(Error::DimensionMismatch(format!(
                    "generators must share dimension and field: {}x{} over {:?} vs {}x{} over {:?}",
                    dim,
                    dim,
                    ctx,
                    g.dim(),
                    g.dim(),
                    g.ctx()
                )));
            }
        }
        for (index, g) in generators.iter().enumerate() {
            if g.determinant().is_zero() {
                return Err(Error::SingularGenerator { index });
            }
        }

        let identity = Matrix::identity(dim, ctx);
        let mut elements = vec![identity.clone()];
        let mut index = HashMap::from([(identity, 0usize)]);
        let mut words: Vec<Vec<u32>> = vec![Vec::new()];
        let mut right: Vec<Vec<usize>> = vec![Vec::new(); generators.len()];
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (gi, g) in generators.iter().enumerate() {
                let y = elements[x].mul(g);
                let next = match index.get(&y) {
                    Some(&k) => k,
                    None => {
                        if elements.len() >= cap {
                            return Err(Error::ClosureCap { cap });
                        }
                        let k = elements.len();
                        let mut w = words[x].clone();
                        w.push(gi as u32);
                        words.push(w);
                        index.insert(y.clone(), k);
                        elements.push(y);
                        queue.push_back(k);
                        k
                    }
                };
                let table = &mut right[gi];
                if table.len() <= x {
                    table.resize(x + 1, usize::MAX);
                }
                table[x] = next;
            }
        }
        let generator_indices = generators.iter().map(|g| index[g]).collect();
        let mut group = FiniteMatrixGroup {
            dim,
            ctx,
            elements,
            index,
            generators: generator_indices,
            right,
            words,
            orders: Vec::new(),
        };
        group.orders = (0..group.order()).map(|x| group.order_by_powers(x)).collect();
        Ok(group)
    }

    /// The group generated by `generators` with the default cap.
    pub fn generate(generators: &[Matrix<S>]) -> Result<Self> {
        Self::closure(generators, DEFAULT_CAP)
    }

    fn order_by_powers(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul_idx(y, x);
            k += 1;
        }
        k
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ctx(&self) -> S::Ctx {
        self.ctx
    }

    /// `|G|`.
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Matrix<S>] {
        &self.elements
    }

    pub fn element(&self, x: usize) -> &Matrix<S> {
        &self.elements[x]
    }

    /// Index of the identity, always 0.
    pub fn identity_index(&self) -> usize {
        0
    }

    pub fn index_of(&self, g: &Matrix<S>) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn contains(&self, g: &Matrix<S>) -> bool {
        self.index.contains_key(g)
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generators
    }

    pub fn generators(&self) -> Vec<Matrix<S>> {
        self.generators.iter().map(|&x| self.elements[x].clone()).collect()
    }

    /// Multiplicative order of the element at index `x`.
    pub fn element_order_at(&self, x: usize) -> usize {
        self.orders[x]
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    /// Index of `elements[a] · elements[b]`.
    pub fn mul_idx(&self, a: usize, b: usize) -> usize {
        self.words[b].iter().fold(a, |x, &g| self.right[g as usize][x])
    }

    /// Index of the inverse, `g^{ord(g) − 1}`.
    pub fn inverse_idx(&self, x: usize) -> usize {
        let mut y = 0;
        for _ in 0..self.orders[x] - 1 {
            y = self.mul_idx(y, x);
        }
        y
    }

    /// Largest element order; the group is cyclic iff this equals `|G|`.
    pub fn max_element_order(&self) -> usize {
        self.orders.iter().copied().max().unwrap_or(1)
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        self.orders.iter().fold(1, |acc, &o| num_integer::lcm(acc, o))
    }

    /// Whether every pair of generators commutes.
    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter()
            .enumerate()
            .all(|(i, a)| gens[i + 1..].iter().all(|b| a.mul(b) == b.mul(a)))
    }

    /// Whether some element has order `|G|`.
    pub fn is_cyclic(&self) -> bool {
        self.max_element_order() == self.order()
    }

    /// Sorted indices of the subgroup generated by `subset`. The closure
    /// is grown one new generator at a time and only adds generators that
    /// are not already inside, so at most `log2 |G|` are ever used.
    pub fn subgroup_indices(&self, subset: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.order()];
        member[0] = true;
        let mut list = vec![0usize];
        let mut gens: Vec<usize> = Vec::new();
        for &s in subset {
            if member[s] {
                continue;
            }
            gens.push(s);
            let mut queue: VecDeque<usize> = list.iter().copied().collect();
            while let Some(x) = queue.pop_front() {
                for &g in &gens {
                    let y = self.mul_idx(x, g);
                    if !member[y] {
                        member[y] = true;
                        list.push(y);
                        queue.push_back(y);
                    }
                }
            }
        }
        list.sort_unstable();
        list
    }

    /// The subgroup generated by the elements at `subset`, as a group in
    /// its own right.
    pub fn subgroup_generated(&self, subset: &[usize]) -> FiniteMatrixGroup<S> {
        let mut gens: Vec<Matrix<S>> = subset.iter().map(|&x| self.elements[x].clone()).collect();
        if gens.is_empty() {
            gens.push(self.elements[0].clone());
        }
        Self::closure(&gens, self.order()).expect("subgroup of a finite group is bounded by it")
    }
}

/// Least `k ≥ 1` with `g^k = I`, failing once `k` would exceed `cap`.
pub fn element_order<S: Scalar>(g: &Matrix<S>, cap: usize) -> Result<usize> {
    let mut power = g.clone();
    for k in 1..=cap {
        if power.is_identity() {
            return Ok(k);
        }
        power = power.mul(g);
    }
    Err(Error::OrderCap { cap })
}
