//! Dense tensors of polynomials over a fixed basis.

use crate::exactpoly::{Poly, Var};

/// `rank^order` array of polynomials, row-major in the slot indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    pub rank: usize,
    pub order: usize,
    pub data: Vec<Poly>,
}

impl Tensor {
    pub fn zeros(rank: usize, order: usize) -> Tensor {
        Tensor {
            rank,
            order,
            data: vec![Poly::zero(); rank.pow(order as u32)],
        }
    }

    pub fn from_vec(rank: usize, order: usize, data: Vec<Poly>) -> Tensor {
        assert_eq!(data.len(), rank.pow(order as u32));
        Tensor { rank, order, data }
    }

    pub fn offset(&self, ix: &[usize]) -> usize {
        debug_assert_eq!(ix.len(), self.order);
        ix.iter().fold(0, |acc, &i| acc * self.rank + i)
    }

    pub fn index_of(&self, mut off: usize) -> Vec<usize> {
        let mut ix = vec![0; self.order];
        for s in (0..self.order).rev() {
            ix[s] = off % self.rank;
            off /= self.rank;
        }
        ix
    }

    pub fn get(&self, ix: &[usize]) -> &Poly {
        &self.data[self.offset(ix)]
    }

    pub fn get_mut(&mut self, ix: &[usize]) -> &mut Poly {
        let o = self.offset(ix);
        &mut self.data[o]
    }

    pub fn add_at(&mut self, ix: &[usize], p: &Poly) {
        if !p.is_zero() {
            *self.get_mut(ix) += p;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|p| p.is_zero())
    }

    pub fn nonzero(&self) -> Vec<(Vec<usize>, Poly)> {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(o, p)| (self.index_of(o), p.clone()))
            .collect()
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> Tensor {
        Tensor {
            rank: self.rank,
            order: self.order,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, c: &Poly) -> Tensor {
        self.map(|p| p * c)
    }

    pub fn substitute(&self, v: Var, r: &Poly) -> Tensor {
        self.map(|p| p.substitute(v, r))
    }

    /// Permute tensor slots: output slot `s` holds input slot `perm[s]`.
    /// Coefficients are left untouched.
    pub fn permute_indices(&self, perm: &[usize]) -> Tensor {
        let mut out = Tensor::zeros(self.rank, self.order);
        for (o, p) in self.data.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let ix = self.index_of(o);
            let nix: Vec<usize> = perm.iter().map(|&s| ix[s]).collect();
            *out.get_mut(&nix) = p.clone();
        }
        out
    }
}

impl std::ops::Add for &Tensor {
    type Output = Tensor;
    fn add(self, rhs: &Tensor) -> Tensor {
        assert_eq!((self.rank, self.order), (rhs.rank, rhs.order));
        Tensor {
            rank: self.rank,
            order: self.order,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl std::ops::Sub for &Tensor {
    type Output = Tensor;
    fn sub(self, rhs: &Tensor) -> Tensor {
        assert_eq!((self.rank, self.order), (rhs.rank, rhs.order));
        Tensor {
            rank: self.rank,
            order: self.order,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl std::ops::Neg for &Tensor {
    type Output = Tensor;
    fn neg(self) -> Tensor {
        self.map(|p| -p)
    }
}

impl std::ops::Add for Tensor {
    type Output = Tensor;
    fn add(self, rhs: Tensor) -> Tensor {
        &self + &rhs
    }
}

impl std::ops::Sub for Tensor {
    type Output = Tensor;
    fn sub(self, rhs: Tensor) -> Tensor {
        &self - &rhs
    }
}

impl std::ops::Neg for Tensor {
    type Output = Tensor;
    fn neg(self) -> Tensor {
        -&self
    }
}
