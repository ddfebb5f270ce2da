use std::collections::BTreeMap;

use num_traits::Zero;

use super::relation::Gen;
use super::{AlgebraError, GenMatrix};
use crate::exact::{q_number, RadicandTable, Scalar};
use crate::RatFuncQ;

/// Generator matrices keyed by label.
pub type LabeledMatrices = BTreeMap<Gen, GenMatrix>;

/// Where a generator set came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    MatrixRep { dim: usize },
    /// Hard-coded copy of the published three-dimensional matrices.
    Reference,
    FockTrunc { m0: RatFuncQ, levels: usize },
    Oscillator { levels: usize },
    Coordinate { degree: usize },
}

/// The five osp generators on one space. `J± = (1+q) V±²` always holds,
/// since it is how they are built.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorSet {
    h: GenMatrix,
    vplus: GenMatrix,
    vminus: GenMatrix,
    jplus: GenMatrix,
    jminus: GenMatrix,
    source: Source,
}

impl GeneratorSet {
    /// Build from `H` and `V±`, with `J± = {V±, V±}_q`.
    pub fn from_parts(
        h: GenMatrix,
        vplus: GenMatrix,
        vminus: GenMatrix,
        source: Source,
    ) -> Result<Self, AlgebraError> {
        let two = Scalar::from(q_number(2));
        let jplus = vplus.checked_mul(&vplus)?.scale(&two);
        let jminus = vminus.checked_mul(&vminus)?.scale(&two);
        h.checked_add(&vplus)?;
        Ok(GeneratorSet {
            h,
            vplus,
            vminus,
            jplus,
            jminus,
            source,
        })
    }

    pub fn dim(&self) -> usize {
        self.h.dim()
    }

    pub fn h(&self) -> &GenMatrix {
        &self.h
    }
    pub fn vplus(&self) -> &GenMatrix {
        &self.vplus
    }
    pub fn vminus(&self) -> &GenMatrix {
        &self.vminus
    }
    pub fn jplus(&self) -> &GenMatrix {
        &self.jplus
    }
    pub fn jminus(&self) -> &GenMatrix {
        &self.jminus
    }
    pub fn source(&self) -> &Source {
        &self.source
    }

    pub fn get(&self, g: Gen) -> Option<&GenMatrix> {
        match g {
            Gen::H => Some(&self.h),
            Gen::VPlus => Some(&self.vplus),
            Gen::VMinus => Some(&self.vminus),
            Gen::JPlus => Some(&self.jplus),
            Gen::JMinus => Some(&self.jminus),
            _ => None,
        }
    }

    pub fn labeled(&self) -> LabeledMatrices {
        Gen::OSP
            .iter()
            .map(|&g| (g, self.get(g).expect("osp label").clone()))
            .collect()
    }

    /// Structural equality of the matrices, ignoring provenance.
    pub fn same_matrices(&self, other: &GeneratorSet) -> bool {
        self.labeled() == other.labeled()
    }

    /// Radicands of all entries, in label then row-major order.
    pub fn radicand_table(&self) -> RadicandTable {
        let mut t = RadicandTable::new();
        for m in self.labeled().values() {
            for row in m.rows() {
                for s in row {
                    for r in s.radicals() {
                        t.intern(r.radicand());
                    }
                }
            }
        }
        t
    }
}

/// Rescale the even generators so that they satisfy the bosonic
/// two-parameter relations at `(r, s) = (q^-1, q^-2)`:
/// `H' = q [2]^-1 H`, `J+' = q [2]^(-3/2) J+`, `J-' = -q [2]^(-3/2) J-`.
///
/// This is the substitution `H -> q^-1 [2] H`, `J± -> ± q^-1 [2]^(3/2) J±`
/// applied to the relation symbols, so on matrices the factors are inverted.
pub fn rescale_bosonic(gens: &GeneratorSet) -> LabeledMatrices {
    let two = q_number(2);
    let q = RatFuncQ::q();
    let h_factor = Scalar::from(&q / &two);
    // [2]^(-3/2) = sqrt([2]) / [2]^2
    let j_factor = Scalar::sqrt(&two).scale(&(&q / &(&two * &two)));
    let mut out = LabeledMatrices::new();
    out.insert(Gen::H, gens.h().scale(&h_factor));
    out.insert(Gen::JPlus, gens.jplus().scale(&j_factor));
    out.insert(Gen::JMinus, gens.jminus().scale(&-j_factor));
    out
}

/// True when every entry of a diagonal matrix's diagonal is equal.
pub(crate) fn constant_diagonal(entries: &[Scalar]) -> bool {
    entries.windows(2).all(|w| (&w[0] - &w[1]).is_zero())
}
