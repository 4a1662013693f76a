//! Quotient-singularity classification of a finite matrix group.
//!
//! For `G ⊂ GL(n)` let `Σ_i` be the elements whose eigenvalue 1 has
//! multiplicity at least `i` and `H_i = ⟨Σ_i⟩`. Elements of
//! `Σ_{n−1} \ {e}` are pseudo-reflections. With `n ≥ 2` the singular
//! locus of `C[x_1..x_n]^G` is empty when `H_0 = H_{n−1}` and otherwise has
//! dimension `l`, the largest index with `H_l ≠ H_{n−1}`. Gorenstein status
//! follows Watanabe: `G ⊂ SL(n)` implies Gorenstein, and the converse holds
//! when there are no pseudo-reflections.

use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::FiniteMatrixGroup;
use crate::number::is_prime;
use crate::scalar::Scalar;

/// The `Σ_i` sets and the subgroups `H_i` they generate, both as sorted
/// element indices of the ambient group, for `i = 0..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaChain {
    dim: usize,
    eigen_one: Vec<usize>,
    sigma: Vec<Vec<usize>>,
    h: Vec<Vec<usize>>,
}

impl SigmaChain {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `Σ_i`.
    pub fn sigma(&self, i: usize) -> &[usize] {
        &self.sigma[i]
    }

    /// `H_i = ⟨Σ_i⟩`.
    pub fn h(&self, i: usize) -> &[usize] {
        &self.h[i]
    }

    /// Multiplicity of the eigenvalue 1 for every element, by index.
    pub fn eigen_one(&self) -> &[usize] {
        &self.eigen_one
    }

    /// Whether `Σ_i` contains only the identity.
    pub fn sigma_is_trivial(&self, i: usize) -> bool {
        self.sigma[i] == [0]
    }
}

pub fn sigma_chain<S: Scalar>(group: &FiniteMatrixGroup<S>) -> SigmaChain {
    let n = group.dim();
    let eigen_one: Vec<usize> = (0..group.order())
        .into_par_iter()
        .map(|x| group.element(x).mult_eigen_one())
        .collect();
    let sigma: Vec<Vec<usize>> = (0..=n)
        .map(|i| (0..group.order()).filter(|&x| eigen_one[x] >= i).collect())
        .collect();
    let mut h: Vec<Vec<usize>> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let sub = if i > 0 && sigma[i] == sigma[i - 1] {
            h[i - 1].clone()
        } else {
            group.subgroup_indices(&sigma[i])
        };
        h.push(sub);
    }
    SigmaChain { dim: n, eigen_one, sigma, h }
}

/// `Σ_{n−1} \ {e}`.
pub fn pseudo_reflections(chain: &SigmaChain) -> Vec<usize> {
    let n = chain.dim;
    let idx = n.saturating_sub(1);
    chain.sigma[idx].iter().copied().filter(|&x| x != 0).collect()
}

/// Dimension of the singular locus, or smooth.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SingLocus {
    Smooth,
    Dim(usize),
}

impl fmt::Display for SingLocus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SingLocus::Smooth => write!(f, "smooth"),
            SingLocus::Dim(l) => write!(f, "{l}"),
        }
    }
}

impl Serialize for SingLocus {
    fn serialize<Z: Serializer>(&self, s: Z) -> std::result::Result<Z::Ok, Z::Error> {
        match self {
            SingLocus::Smooth => s.serialize_str("smooth"),
            SingLocus::Dim(l) => s.serialize_u64(*l as u64),
        }
    }
}

/// Dimension of the singular locus from the `H_i` chain; needs `n ≥ 2`.
pub fn sing_locus_dim(chain: &SigmaChain) -> Result<SingLocus> {
    let n = chain.dim;
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    let top = &chain.h[n - 1];
    if chain.h[0] == *top {
        return Ok(SingLocus::Smooth);
    }
    let l = (0..=n - 2)
        .rev()
        .find(|&i| chain.h[i] != *top)
        .expect("H_0 differs from H_{n-1}");
    Ok(SingLocus::Dim(l))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gorenstein {
    True,
    False,
    Indeterminate,
}

impl Gorenstein {
    pub fn as_str(self) -> &'static str {
        match self {
            Gorenstein::True => "true",
            Gorenstein::False => "false",
            Gorenstein::Indeterminate => "indeterminate",
        }
    }
}

impl fmt::Display for Gorenstein {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Gorenstein {
    fn serialize<Z: Serializer>(&self, s: Z) -> std::result::Result<Z::Ok, Z::Error> {
        s.serialize_str(self.as_str())
    }
}

/// Whether every element has determinant 1. Checking the generators is
/// enough since the determinant is multiplicative.
pub fn in_special_linear<S: Scalar>(group: &FiniteMatrixGroup<S>) -> bool {
    group.generators().iter().all(|g| g.determinant().is_one())
}

pub fn gorenstein_status<S: Scalar>(group: &FiniteMatrixGroup<S>, has_pseudo_reflections: bool) -> Gorenstein {
    if in_special_linear(group) {
        Gorenstein::True
    } else if has_pseudo_reflections {
        Gorenstein::Indeterminate
    } else {
        Gorenstein::False
    }
}

/// Outcome of checking "odd prime dimension, no pseudo-reflections,
/// Gorenstein and isolated implies cyclic" on one group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TheoremWitness {
    Holds,
    NotApplicable,
    Violation,
}

impl TheoremWitness {
    pub fn as_str(self) -> &'static str {
        match self {
            TheoremWitness::Holds => "holds",
            TheoremWitness::NotApplicable => "not-applicable",
            TheoremWitness::Violation => "VIOLATION",
        }
    }
}

impl fmt::Display for TheoremWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for TheoremWitness {
    fn serialize<Z: Serializer>(&self, s: Z) -> std::result::Result<Z::Ok, Z::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub dimension: usize,
    pub group_order: usize,
    pub in_sl: bool,
    pub has_pseudo_reflections: bool,
    pub fixed_point_free: bool,
    pub isolated: bool,
    pub sing_locus_dim: SingLocus,
    pub cyclic: bool,
    pub abelian: bool,
    pub gorenstein: Gorenstein,
    pub theorem_witness: TheoremWitness,
}

pub fn classify<S: Scalar>(group: &FiniteMatrixGroup<S>) -> ClassificationReport {
    classify_with_chain(group).0
}

/// The report together with the chain it was computed from.
pub fn classify_with_chain<S: Scalar>(group: &FiniteMatrixGroup<S>) -> (ClassificationReport, SigmaChain) {
    let n = group.dim();
    let chain = sigma_chain(group);
    let has_pseudo_reflections = !pseudo_reflections(&chain).is_empty();
    let fixed_point_free = chain.sigma_is_trivial(1);
    // A finite subgroup of GL(1) is cyclic and its invariant ring is a
    // polynomial ring, so the chain criterion is not consulted.
    let sing = if n < 2 {
        SingLocus::Smooth
    } else {
        sing_locus_dim(&chain).expect("n >= 2")
    };
    let isolated = sing == SingLocus::Dim(0);
    let in_sl = in_special_linear(group);
    let gorenstein = gorenstein_status(group, has_pseudo_reflections);
    let cyclic = group.is_cyclic();
    let abelian = group.is_abelian();
    let applies = n % 2 == 1
        && is_prime(n as u64)
        && !has_pseudo_reflections
        && gorenstein == Gorenstein::True
        && isolated;
    let theorem_witness = match (applies, cyclic) {
        (false, _) => TheoremWitness::NotApplicable,
        (true, true) => TheoremWitness::Holds,
        (true, false) => TheoremWitness::Violation,
    };
    let report = ClassificationReport {
        dimension: n,
        group_order: group.order(),
        in_sl,
        has_pseudo_reflections,
        fixed_point_free,
        isolated,
        sing_locus_dim: sing,
        cyclic,
        abelian,
        gorenstein,
        theorem_witness,
    };
    (report, chain)
}
