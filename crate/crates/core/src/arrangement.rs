//! Independent oracle: the root hyperplane arrangement restricted to the
//! retained coordinates, with two unrelated region counters.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::dynkin::positive_roots;
use crate::error::{Error, Result};
use crate::knitting::Configuration;
use crate::linalg::{Covector, EchelonBasis};

/// Largest arrangement handed to the subset-sum counter.
pub const WHITNEY_BUDGET: usize = 24;

/// Largest number of regions the sign-vector enumerator will build.
pub const SIGN_VECTOR_BUDGET: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictedArrangement {
    pub dim: usize,
    pub covectors: Vec<Covector>,
}

impl RestrictedArrangement {
    /// Normalizes and deduplicates; rejects zero vectors and wrong lengths.
    pub fn new(dim: usize, raw: &[Vec<i64>]) -> Result<Self> {
        let mut set = BTreeSet::new();
        for c in raw {
            if c.len() != dim {
                return Err(Error::Argument(format!("covector {c:?} is not of length {dim}")));
            }
            let (cov, _) = Covector::normalize(c)
                .ok_or_else(|| Error::Argument("zero covector in arrangement".into()))?;
            set.insert(cov);
        }
        Ok(Self {
            dim,
            covectors: set.into_iter().collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.covectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.covectors.is_empty()
    }

    pub fn without(&self, index: usize) -> Self {
        let mut covectors = self.covectors.clone();
        covectors.remove(index);
        Self { dim: self.dim, covectors }
    }
}

/// Restricts every positive root to the slots of `config`; roots supported
/// on contracted vertices only give the zero covector and are dropped.
pub fn restricted_walls(config: &Configuration) -> RestrictedArrangement {
    let raw: Vec<Vec<i64>> = positive_roots(config.diagram().ty())
        .iter()
        .map(|root| {
            config
                .slots()
                .iter()
                .map(|&v| root.coefficient(v) as i64)
                .collect::<Vec<i64>>()
        })
        .filter(|c| c.iter().any(|&x| x != 0))
        .collect();
    RestrictedArrangement::new(config.len(), &raw).expect("zero covectors filtered")
}

/// Region count of a central arrangement as `Σ_B (-1)^{|B| - rank B}` over
/// all subsets `B` of the covectors.
pub fn count_regions(arr: &RestrictedArrangement) -> Result<u64> {
    if arr.len() > WHITNEY_BUDGET {
        return Err(Error::Resource(format!(
            "{} hyperplanes exceed the subset-sum budget of {WHITNEY_BUDGET}; use sign-vector enumeration",
            arr.len()
        )));
    }
    let rows: Vec<&[i64]> = arr.covectors.iter().map(|c| c.coeffs()).collect();
    let total = whitney(&rows, 0, &EchelonBasis::default(), 0, arr.dim);
    u64::try_from(total).map_err(|_| Error::Consistency(format!("negative region count {total}")))
}

fn whitney(rows: &[&[i64]], next: usize, basis: &EchelonBasis, size: usize, dim: usize) -> i64 {
    let rank = basis.rank();
    if next == rows.len() {
        return if (size - rank).is_multiple_of(2) { 1 } else { -1 };
    }
    // Once the rank is full every further element only flips the sign, so
    // the remaining subsets cancel in pairs.
    if rank == dim {
        return 0;
    }
    let skip = whitney(rows, next + 1, basis, size, dim);
    let mut with = basis.clone();
    with.insert(rows[next]);
    skip + whitney(rows, next + 1, &with, size + 1, dim)
}

/// Every sign vector (entries ±1, one per covector) whose open region is
/// nonempty. Hyperplanes are added one at a time; a region is split by the
/// new hyperplane exactly when it meets it, and those regions are found by
/// enumerating the arrangement restricted to the new hyperplane.
pub fn sign_vectors(arr: &RestrictedArrangement) -> Result<Vec<Vec<i8>>> {
    let covs: Vec<Vec<BigInt>> = arr
        .covectors
        .iter()
        .map(|c| c.coeffs().iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut out: Vec<Vec<i8>> = regions(arr.dim, &covs)?.into_iter().map(|(s, _)| s).collect();
    out.sort();
    Ok(out)
}

type Region = (Vec<i8>, Vec<BigInt>);

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn sign(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Regions of a central arrangement of pairwise non-proportional nonzero
/// covectors, each with an integer witness point.
fn regions(dim: usize, covs: &[Vec<BigInt>]) -> Result<Vec<Region>> {
    let mut current: Vec<Region> = vec![(Vec::new(), vec![BigInt::zero(); dim])];
    for (k, c) in covs.iter().enumerate() {
        let p = c.iter().position(|x| !x.is_zero()).expect("nonzero covector");
        // integer basis of the hyperplane c = 0
        let basis: Vec<Vec<BigInt>> = (0..dim)
            .filter(|&j| j != p)
            .map(|j| {
                let mut b = vec![BigInt::zero(); dim];
                b[j] = c[p].clone();
                b[p] = -c[j].clone();
                b
            })
            .collect();
        let restricted: BTreeSet<Vec<BigInt>> = covs[..k]
            .iter()
            .filter_map(|a| normalize(basis.iter().map(|b| dot(a, b)).collect()))
            .collect();
        let restricted: Vec<Vec<BigInt>> = restricted.into_iter().collect();
        let mut cut: HashMap<Vec<i8>, Vec<BigInt>> = HashMap::new();
        for (_, y) in regions(dim - 1, &restricted)? {
            let mut x = vec![BigInt::zero(); dim];
            for (yj, b) in y.iter().zip(&basis) {
                for (xi, bi) in x.iter_mut().zip(b) {
                    *xi += yj * bi;
                }
            }
            let s: Vec<i8> = covs[..k].iter().map(|a| sign(&dot(a, &x))).collect();
            if s.contains(&0) {
                return Err(Error::Consistency("restricted witness lies on a hyperplane".into()));
            }
            cut.insert(s, x);
        }
        let mut next = Vec::with_capacity(current.len() + cut.len());
        for (s, w) in current {
            match cut.get(&s) {
                Some(q) => {
                    // push q off the hyperplane along e_p, staying inside the region
                    let mut n = BigInt::one();
                    for (a, &sa) in covs[..k].iter().zip(&s) {
                        let slack = dot(a, q) * BigInt::from(sa);
                        let step = a[p].abs();
                        n = n.max(step / slack + 1);
                    }
                    for dir in [1i8, -1] {
                        let mut x: Vec<BigInt> = q.iter().map(|v| v * &n).collect();
                        x[p] += BigInt::from(dir);
                        let mut sv = s.clone();
                        sv.push(dir * sign(&c[p]));
                        next.push((sv, x));
                    }
                }
                None => {
                    let v = sign(&dot(c, &w));
                    if v == 0 {
                        return Err(Error::Consistency("uncut region touches a hyperplane".into()));
                    }
                    let mut sv = s;
                    sv.push(v);
                    next.push((sv, w));
                }
            }
        }
        if next.len() > SIGN_VECTOR_BUDGET {
            return Err(Error::Resource(format!(
                "more than {SIGN_VECTOR_BUDGET} regions after {} hyperplanes",
                k + 1
            )));
        }
        current = next;
    }
    Ok(current)
}

fn normalize(v: Vec<BigInt>) -> Option<Vec<BigInt>> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return None;
    }
    let first = v.iter().find(|x| !x.is_zero()).expect("nonzero");
    let g = if first.is_negative() { -g } else { g };
    Some(v.into_iter().map(|x| x / &g).collect())
}

/// Subset-sum count within budget, otherwise the sign-vector count.
pub fn region_count(arr: &RestrictedArrangement) -> Result<u64> {
    if arr.len() <= WHITNEY_BUDGET {
        count_regions(arr)
    } else {
        Ok(sign_vectors(arr)?.len() as u64)
    }
}
