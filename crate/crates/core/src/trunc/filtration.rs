use crate::congruence::GammaModule;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, Fp, FpMatrix, SparseVec, Subspace};

/// F⁰ ⊇ F¹ ⊇ … ⊇ F^{n+1} with F^{i+1} spanned by (1 − u)·F^i over the given u.
#[derive(Debug, Clone)]
pub struct Filtration {
    spaces: Vec<Subspace>,
}

impl Filtration {
    pub fn trunc_degree(&self) -> usize {
        self.spaces.len() - 2
    }

    pub fn space(&self, i: usize) -> &Subspace {
        &self.spaces[i]
    }

    /// dim F^i for i = 0..=n+1.
    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(Subspace::dim).collect()
    }

    /// dim F^i/F^{i+1} for i = 0..=n.
    pub fn graded_dims(&self) -> Vec<usize> {
        self.dims().windows(2).map(|w| w[0] - w[1]).collect()
    }

    /// dim F⁰/F^{n+1}.
    pub fn quotient_dim(&self) -> usize {
        self.spaces[0].dim() - self.spaces[self.spaces.len() - 1].dim()
    }
}

/// A module with the filtration by powers of an augmentation ideal.
#[derive(Debug, Clone)]
pub struct FilteredModule {
    pub base: GammaModule,
    pub filtration: Filtration,
}

impl FilteredModule {
    pub fn trunc_degree(&self) -> usize {
        self.filtration.trunc_degree()
    }
}

fn apply_one_minus(field: Fp, u: &FpMatrix, v: &SparseVec, dim: usize) -> SparseVec {
    let mut dense = vec![0u32; dim];
    for &(c, x) in v {
        dense[c] = x;
    }
    let uv = u.mul_vec(&dense);
    dense
        .iter()
        .zip(&uv)
        .enumerate()
        .map(|(i, (&a, &b))| (i, field.sub(a, b)))
        .filter(|&(_, x)| x != 0)
        .collect()
}

/// Filtration of F_p^dim by the operators 1 − u for u in `gens`, to degree n + 1.
///
/// The spaces must shrink until they reach zero; stalling at a nonzero space
/// means the operators do not generate a p-group action.
pub fn filtration_by_operators(field: Fp, dim: usize, gens: &[FpMatrix], n: usize) -> Result<Filtration> {
    for g in gens {
        if g.rows() != dim || g.cols() != dim {
            return Err(Error::DimensionMismatch(format!("{}x{} operator on F_p^{dim}", g.rows(), g.cols())));
        }
    }
    let mut spaces = vec![Subspace::full(field, dim)];
    for i in 1..=n + 1 {
        let prev = &spaces[i - 1];
        let mut e = Echelon::dense(field, dim);
        'outer: for v in prev.basis() {
            for u in gens {
                if e.rank() == prev.dim() {
                    break 'outer;
                }
                e.insert_sparse(&apply_one_minus(field, u, v, dim));
            }
        }
        let next = Subspace::from_echelon(&e);
        if next.dim() == prev.dim() && next.dim() > 0 {
            return Err(Error::Validation(format!(
                "filtration stalls at degree {i} with dimension {}; the generators do not act unipotently, \
                 use a subgroup of p-power order or a larger level m",
                next.dim()
            )));
        }
        spaces.push(next);
    }
    Ok(Filtration { spaces })
}

/// The augmentation filtration of `module` for the subgroup acting through `subgroup_gens`.
pub fn augmentation_filtration(module: &GammaModule, subgroup_gens: &[FpMatrix], n: usize) -> Result<FilteredModule> {
    let filtration = filtration_by_operators(module.field(), module.dim(), subgroup_gens, n)?;
    Ok(FilteredModule { base: module.clone(), filtration })
}
