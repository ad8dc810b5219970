//! Shared test fixtures: a dense Kronecker-product Hamiltonian built from
//! explicit 2x2 Pauli matrices. Deliberately written as naive matrix
//! algebra with none of the library's bit tricks, so agreement between the
//! two is meaningful.

#![allow(dead_code)]

use ghz_chain::model::ChainSpec;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type C64 = Complex64;

#[derive(Debug, Clone)]
pub struct DenseMatrix {
    pub dim: usize,
    data: Vec<C64>, // row-major
}

impl DenseMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![C64::ZERO; dim * dim] }
    }

    pub fn from_rows(rows: &[&[C64]]) -> Self {
        let dim = rows.len();
        let mut m = Self::zeros(dim);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), dim);
            for (c, &v) in row.iter().enumerate() {
                *m.at_mut(r, c) = v;
            }
        }
        m
    }

    pub fn at(&self, r: usize, c: usize) -> C64 {
        self.data[r * self.dim + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut C64 {
        &mut self.data[r * self.dim + c]
    }

    pub fn matvec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|r| (0..self.dim).map(|c| self.at(r, c) * v[c]).sum())
            .collect()
    }

    pub fn add_scaled(&mut self, other: &DenseMatrix, factor: f64) {
        assert_eq!(self.dim, other.dim);
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b * factor;
        }
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        for r in 0..self.dim {
            for c in 0..self.dim {
                if (self.at(r, c) - self.at(c, r).conj()).norm() > tol {
                    return false;
                }
            }
        }
        true
    }
}

/// kron(a, b): `a` indexes the high bits, `b` the low bits.
pub fn kron(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    let dim = a.dim * b.dim;
    let mut m = DenseMatrix::zeros(dim);
    for ra in 0..a.dim {
        for ca in 0..a.dim {
            let f = a.at(ra, ca);
            if f == C64::ZERO {
                continue;
            }
            for rb in 0..b.dim {
                for cb in 0..b.dim {
                    *m.at_mut(ra * b.dim + rb, ca * b.dim + cb) = f * b.at(rb, cb);
                }
            }
        }
    }
    m
}

/// 2x2 Pauli in the basis (index 0 = |->, index 1 = |+>), so z = diag(-1, 1).
pub fn pauli(which: char) -> DenseMatrix {
    let o = C64::ZERO;
    let one = C64::ONE;
    let i = C64::new(0.0, 1.0);
    match which {
        'i' => DenseMatrix::from_rows(&[&[one, o], &[o, one]]),
        'x' => DenseMatrix::from_rows(&[&[o, one], &[one, o]]),
        'y' => DenseMatrix::from_rows(&[&[o, i], &[-i, o]]),
        'z' => DenseMatrix::from_rows(&[&[-one, o], &[o, one]]),
        other => panic!("unknown Pauli {other:?}"),
    }
}

/// The same Pauli on every one of the n sites (site k = bit k).
pub fn pauli_string(n: usize, which: char) -> DenseMatrix {
    let op = pauli(which);
    let mut m = op.clone();
    for _ in 1..n {
        m = kron(&m, &op);
    }
    // Built high-to-low; every factor identical, so ordering is moot - but
    // keep the convention explicit for single_site below.
    m
}

/// One Pauli on `site`, identity elsewhere.
pub fn single_site(n: usize, site: usize, which: char) -> DenseMatrix {
    let mut m = DenseMatrix::from_rows(&[&[C64::ONE]]);
    for k in (0..n).rev() {
        let factor = if k == site { pauli(which) } else { pauli('i') };
        m = kron(&m, &factor);
    }
    m
}

/// Full dense Hamiltonian at detuning value `w`:
/// w * sz_1 + gx * X..X + gy * Y..Y + gz * Z..Z.
pub fn dense_hamiltonian(spec: &ChainSpec, w: f64) -> DenseMatrix {
    let n = spec.n_qubits;
    let mut h = DenseMatrix::zeros(1 << n);
    h.add_scaled(&single_site(n, 0, 'z'), w);
    if spec.gamma_x != 0.0 {
        h.add_scaled(&pauli_string(n, 'x'), spec.gamma_x);
    }
    if spec.gamma_y != 0.0 {
        h.add_scaled(&pauli_string(n, 'y'), spec.gamma_y);
    }
    if spec.gamma_z != 0.0 {
        h.add_scaled(&pauli_string(n, 'z'), spec.gamma_z);
    }
    h
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_state(rng: &mut ChaCha8Rng, dim: usize) -> Vec<C64> {
    let mut v: Vec<C64> = (0..dim)
        .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in v.iter_mut() {
        *a /= norm;
    }
    v
}

pub fn max_component_diff(a: &[C64], b: &[C64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
