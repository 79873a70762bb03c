//! Seeded pseudo-random modules, representations and ring elements.

use fuchs_core::linalg::jordan_block;
use fuchs_core::{
    Cyclotomic, DiffModule, ExpRingElem, ExponentClass, GroupAlgElem, LaurentPoly, Matrix,
    Rational, Ring, SigmaModule,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Size limits for generated objects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sizes {
    pub max_dim: usize,
    pub max_denominator: i64,
    pub max_degree: i64,
}

impl Default for Sizes {
    fn default() -> Self {
        Sizes {
            max_dim: 5,
            max_denominator: 12,
            max_degree: 4,
        }
    }
}

pub struct Gen {
    rng: ChaCha8Rng,
    pub sizes: Sizes,
}

impl Gen {
    pub fn new(seed: u64, sizes: Sizes) -> Self {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            sizes,
        }
    }

    /// An independent stream per `(seed, property, case)`, so results do not
    /// depend on scheduling.
    pub fn for_case(seed: u64, property: usize, case: usize, sizes: Sizes) -> Self {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&seed.to_le_bytes());
        key[8..16].copy_from_slice(&(property as u64).to_le_bytes());
        key[16..24].copy_from_slice(&(case as u64).to_le_bytes());
        Gen {
            rng: ChaCha8Rng::from_seed(key),
            sizes,
        }
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn dim(&mut self, cap: usize) -> usize {
        self.rng.gen_range(1..=self.sizes.max_dim.min(cap).max(1))
    }

    pub fn denominator(&mut self) -> i64 {
        self.rng.gen_range(1..=self.sizes.max_denominator.max(1))
    }

    pub fn rational(&mut self) -> Rational {
        Rational::new(self.int(-12, 12), self.int(1, 6))
    }

    pub fn exponent_class(&mut self) -> ExponentClass {
        let q = self.denominator();
        ExponentClass::new(self.int(0, q - 1), q)
    }

    /// A scalar in ℚ(ζ_N) for a small conductor `N`.
    pub fn cyclotomic(&mut self) -> Cyclotomic {
        const CONDUCTORS: [u32; 6] = [1, 3, 4, 5, 8, 12];
        let n = CONDUCTORS[self.index(CONDUCTORS.len())];
        let phi = fuchs_core::scalar::euler_phi(n) as usize;
        Cyclotomic::new(n, (0..phi).map(|_| self.rational()).collect())
    }

    pub fn laurent(&mut self) -> LaurentPoly {
        let d = self.sizes.max_degree;
        let terms = self.int(0, 3);
        LaurentPoly::from_terms((0..terms).map(|_| {
            let c = if self.chance(0.8) {
                Cyclotomic::from(self.rational())
            } else {
                self.cyclotomic()
            };
            (self.int(-d, d), c)
        }))
    }

    pub fn group_alg(&mut self) -> GroupAlgElem {
        let mut g = GroupAlgElem::default();
        for _ in 0..self.int(0, 2) {
            let a = self.exponent_class();
            let f = self.laurent();
            g.add_component(a, &f);
        }
        g
    }

    pub fn exp_elem(&mut self) -> ExpRingElem {
        let k = self.int(0, 3) as usize;
        ExpRingElem::new((0..k).map(|_| self.group_alg()).collect())
    }

    pub fn invertible_matrix(&mut self, n: usize) -> Matrix<Cyclotomic> {
        loop {
            let m = Matrix::from_fn(n, n, |_, _| Cyclotomic::from(self.int(-2, 2)));
            if !m.det().is_zero() {
                return m;
            }
        }
    }

    fn partition(&mut self, n: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut left = n;
        while left > 0 {
            let s = self.rng.gen_range(1..=left);
            out.push(s);
            left -= s;
        }
        out
    }

    /// `P·diag(J(a_i, n_i))·P⁻¹` with `a_i = k/q`, `|a_i| ≤ 2`.
    pub fn constant_matrix_over(&mut self, n: usize, q: i64) -> Matrix<Cyclotomic> {
        let blocks: Vec<_> = self
            .partition(n)
            .into_iter()
            .map(|s| {
                jordan_block(
                    &Cyclotomic::from(Rational::new(self.int(-2 * q, 2 * q), q)),
                    s,
                )
            })
            .collect();
        let p = self.invertible_matrix(n);
        p.mul(&Matrix::block_diag(&blocks))
            .mul(&p.inverse().expect("invertible"))
    }

    pub fn constant_module(&mut self, cap: usize) -> DiffModule {
        let n = self.dim(cap);
        let q = self.denominator();
        self.constant_module_over(n, q)
    }

    pub fn constant_module_over(&mut self, n: usize, q: i64) -> DiffModule {
        DiffModule::from_constant(&self.constant_matrix_over(n, q)).expect("square")
    }

    /// Two constant modules sharing an exponent denominator.
    pub fn constant_pair(&mut self, cap: usize) -> (DiffModule, DiffModule) {
        let q = self.denominator();
        let (n1, n2) = (self.dim(cap), self.dim(cap));
        (
            self.constant_module_over(n1, q),
            self.constant_module_over(n2, q),
        )
    }

    /// `Q·diag(J(ζ_q^k, n_i))·Q⁻¹`.
    pub fn sigma_module(&mut self, cap: usize) -> SigmaModule {
        let n = self.dim(cap);
        let q = self.denominator();
        let blocks: Vec<_> = self
            .partition(n)
            .into_iter()
            .map(|s| jordan_block(&Cyclotomic::zeta_pow(q as u32, self.int(0, q - 1)), s))
            .collect();
        let p = self.invertible_matrix(n);
        SigmaModule::new(
            p.mul(&Matrix::block_diag(&blocks))
                .mul(&p.inverse().expect("invertible")),
        )
        .expect("invertible monodromy")
    }

    /// `diag(t^{k_i})·P` with `|k_i| ≤ 2`.
    pub fn shearing(&mut self, n: usize) -> Matrix<LaurentPoly> {
        let ks: Vec<LaurentPoly> = (0..n)
            .map(|_| LaurentPoly::t_pow(self.int(-2, 2)))
            .collect();
        let p = self.invertible_matrix(n);
        Matrix::diagonal_from(&ks).mul(&fuchs_core::diffmod::to_laurent_matrix(&p))
    }
}
