//! Wedderburn decomposition `A = (+)_k M_{n_k}` computed numerically from
//! the left regular representation.
//!
//! A random self-adjoint right multiplication lies in the commutant of the
//! left action; its eigenspaces are irreducible for the left action. Two
//! eigenspaces carry the same matrix block exactly when some right
//! multiplication maps one into the other.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{QgError, Result};
use crate::linalg::{self, CMat, C64, ZERO};
use crate::quantum_group::FiniteQuantumGroup;

pub const DEFAULT_SEED: u64 = 0x5eed_b10c;
const MAX_ATTEMPTS: u64 = 8;
const CLUSTER_TOL: f64 = 1e-7;
const LINK_TOL: f64 = 1e-7;

#[derive(Debug, Clone)]
pub struct Block {
    pub size: usize,
    /// Offset of this block in the concatenated row-major coordinates.
    pub offset: usize,
    /// Isometry from `C^size` into the GNS space.
    pub iso: CMat,
}

#[derive(Debug, Clone)]
pub struct BlockDecomposition {
    pub blocks: Vec<Block>,
    /// Coefficients -> concatenated row-major block matrices.
    pub forward: CMat,
    pub backward: CMat,
    pub seed: u64,
    /// Smallest gap between distinct eigenvalue clusters.
    pub gap: f64,
}

impl BlockDecomposition {
    pub fn compute(g: &FiniteQuantumGroup, seed: u64) -> Result<Self> {
        let gns = g.gns()?;
        let n = g.dim();
        let mut last_gap = 0.0;
        for attempt in 0..MAX_ATTEMPTS {
            let s = seed.wrapping_add(attempt);
            match try_decompose(g, &gns.left_basis, &gns.right_basis, s) {
                Ok(mut d) => {
                    d.seed = s;
                    let check = d.forward.clone() * d.backward.clone();
                    if linalg::close_mat(&check, &linalg::identity(n)) < 1e-8 {
                        return Ok(d);
                    }
                }
                Err(gap) => last_gap = gap,
            }
        }
        Err(QgError::NumericalDegeneracy { gap: last_gap })
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.size).collect()
    }

    /// The block images `pi_k(x)` of an element given by coefficients.
    pub fn to_blocks(&self, a: &[C64]) -> Vec<CMat> {
        let f = &self.forward * linalg::to_cvec(a);
        self.blocks
            .iter()
            .map(|b| CMat::from_fn(b.size, b.size, |r, c| f[b.offset + r * b.size + c]))
            .collect()
    }

    pub fn from_blocks(&self, mats: &[CMat]) -> Vec<C64> {
        let n = self.forward.nrows();
        let mut f = linalg::to_cvec(&vec![ZERO; n]);
        for (b, m) in self.blocks.iter().zip(mats) {
            for r in 0..b.size {
                for c in 0..b.size {
                    f[b.offset + r * b.size + c] = m[(r, c)];
                }
            }
        }
        (&self.backward * f).iter().cloned().collect()
    }

    /// Trace-pairing matrices `W_k` with `omega(x) = sum_k tr(W_k x_k)`.
    pub fn pairing_matrices(&self, omega: &[C64]) -> Vec<CMat> {
        let w = self.backward.transpose() * linalg::to_cvec(omega);
        self.blocks
            .iter()
            .map(|b| CMat::from_fn(b.size, b.size, |r, c| w[b.offset + c * b.size + r]))
            .collect()
    }
}

fn try_decompose(
    g: &FiniteQuantumGroup,
    left: &[CMat],
    right: &[CMat],
    seed: u64,
) -> std::result::Result<BlockDecomposition, f64> {
    let n = g.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let z = linalg::random_vector(&mut rng, n);
    let zs = g.adjoint(&z);
    let y: Vec<C64> = z.iter().zip(&zs).map(|(a, b)| a + b).collect();
    let rho = crate::gns::combine(right, &y);
    let (vals, vecs) = linalg::hermitian_eigen(&rho);
    let scale = vals.iter().map(|v| v.abs()).fold(1.0, f64::max);

    let mut clusters: Vec<Vec<usize>> = Vec::new();
    let mut gap = f64::INFINITY;
    for i in 0..n {
        match clusters.last_mut() {
            Some(cl) if vals[i] - vals[*cl.last().unwrap()] <= CLUSTER_TOL * scale => cl.push(i),
            Some(cl) => {
                gap = gap.min(vals[i] - vals[*cl.last().unwrap()]);
                clusters.push(vec![i]);
            }
            None => clusters.push(vec![i]),
        }
    }
    if gap < 1e3 * CLUSTER_TOL * scale {
        return Err(gap);
    }
    let spaces: Vec<CMat> = clusters
        .iter()
        .map(|cl| CMat::from_fn(n, cl.len(), |r, c| vecs[(r, cl[c])]))
        .collect();

    // union-find over eigenspaces linked by right multiplications
    let m = spaces.len();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for a in 0..m {
        for b in (a + 1)..m {
            let linked = right
                .iter()
                .any(|l| linalg::op_norm(&(spaces[a].adjoint() * l * &spaces[b])) > LINK_TOL);
            if linked {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[rb] = ra;
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut root_of: Vec<Option<usize>> = vec![None; m];
    for a in 0..m {
        let r = find(&mut parent, a);
        match root_of[r] {
            Some(gi) => groups[gi].push(a),
            None => {
                root_of[r] = Some(groups.len());
                groups.push(vec![a]);
            }
        }
    }
    for grp in &groups {
        let size = spaces[grp[0]].ncols();
        if grp.len() != size || grp.iter().any(|&a| spaces[a].ncols() != size) {
            return Err(gap.min(CLUSTER_TOL * scale));
        }
    }
    groups.sort_by_key(|grp| spaces[grp[0]].ncols());

    let mut blocks = Vec::new();
    let mut offset = 0;
    for grp in &groups {
        let iso = spaces[grp[0]].clone();
        let size = iso.ncols();
        blocks.push(Block { size, offset, iso });
        offset += size * size;
    }
    if offset != n {
        return Err(gap);
    }
    let mut forward = CMat::zeros(n, n);
    for (i, l) in left.iter().enumerate() {
        for b in &blocks {
            let pk = b.iso.adjoint() * l * &b.iso;
            for r in 0..b.size {
                for c in 0..b.size {
                    forward[(b.offset + r * b.size + c, i)] = pk[(r, c)];
                }
            }
        }
    }
    let backward = linalg::inverse(&forward).ok_or(gap)?;
    Ok(BlockDecomposition {
        blocks,
        forward,
        backward,
        seed,
        gap: if gap.is_finite() { gap } else { 0.0 },
    })
}
