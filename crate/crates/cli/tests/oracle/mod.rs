//! Brute-force reference implementations over a plain relation matrix.
//! Everything is recomputed from the order relation alone and shares no code
//! with the library beyond reading `leq`.

use posetkit::Poset;

pub struct Rel {
    pub n: usize,
    pub le: Vec<Vec<bool>>,
}

pub type Set = u64;

fn members(s: Set) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| s >> i & 1 == 1)
}

fn size(s: Set) -> usize {
    s.count_ones() as usize
}

impl Rel {
    pub fn of(p: &Poset) -> Rel {
        let n = p.len();
        Rel {
            n,
            le: (0..n).map(|i| (0..n).map(|j| p.leq(i, j)).collect()).collect(),
        }
    }

    pub fn all(&self) -> Set {
        (1u64 << self.n) - 1
    }

    pub fn subsets(&self) -> impl Iterator<Item = Set> {
        0..=self.all()
    }

    pub fn join(&self, s: Set) -> Option<usize> {
        let ub: Vec<usize> = (0..self.n).filter(|&u| members(s).all(|x| self.le[x][u])).collect();
        ub.iter().copied().find(|&u| ub.iter().all(|&v| self.le[u][v]))
    }

    pub fn meet(&self, s: Set) -> Option<usize> {
        let lb: Vec<usize> = (0..self.n).filter(|&l| members(s).all(|x| self.le[l][x])).collect();
        lb.iter().copied().find(|&l| lb.iter().all(|&v| self.le[v][l]))
    }

    pub fn down(&self, s: Set) -> Set {
        (0..self.n)
            .filter(|&q| members(s).any(|x| self.le[q][x]))
            .fold(0, |acc, q| acc | 1 << q)
    }

    /// LMD with `|X| < alpha` (`None` for ω), straight from the definition.
    pub fn lmd(&self, alpha: Option<usize>) -> bool {
        for a in 0..self.n {
            for x in self.subsets().filter(|&x| x != 0) {
                if alpha.is_some_and(|al| size(x) >= al) {
                    continue;
                }
                let Some(j) = self.join(x) else { continue };
                let Some(m) = self.meet(1 << a | 1 << j) else { continue };
                let parts: Option<Set> = members(x)
                    .map(|e| self.meet(1 << a | 1 << e).map(|q| 1u64 << q))
                    .try_fold(0, |acc, q| q.map(|q| acc | q));
                if parts.and_then(|ps| self.join(ps)) != Some(m) {
                    return false;
                }
            }
        }
        true
    }

    /// Every nonempty set with a join and size below `kappa`.
    pub fn u_kappa(&self, kappa: Option<usize>) -> Vec<Set> {
        self.subsets()
            .filter(|&s| s != 0 && kappa.is_none_or(|k| size(s) < k) && self.join(s).is_some())
            .collect()
    }

    /// Down-sets closed under the joins of members of `u`.
    pub fn ideals(&self, u: &[Set]) -> Vec<Set> {
        self.subsets()
            .filter(|&i| self.down(i) == i)
            .filter(|&i| {
                u.iter()
                    .all(|&t| t & !i != 0 || i >> self.join(t).unwrap() & 1 == 1)
            })
            .collect()
    }

    pub fn close(ideals: &[Set], s: Set, all: Set) -> Set {
        ideals.iter().filter(|&&i| s & !i == 0).fold(all, |acc, &i| acc & i)
    }

    /// `HM_ω`, quantified over every subset.
    pub fn hm_omega(&self) -> bool {
        let u = self.u_kappa(None);
        let ideals = self.ideals(&u);
        self.subsets().all(|s| {
            let d = self.down(s);
            let one = u
                .iter()
                .filter(|&&t| t & !d == 0)
                .fold(0, |acc, &t| acc | 1 << self.join(t).unwrap());
            one == Self::close(&ideals, s, self.all())
        })
    }

    /// `U_Φ` for the closed sets `ideals`.
    pub fn induced(&self, ideals: &[Set]) -> Vec<Set> {
        self.subsets()
            .filter(|&s| s != 0)
            .filter(|&s| {
                self.join(s).is_some_and(|j| {
                    ideals.iter().all(|&c| s & !c != 0 || c >> j & 1 == 1)
                })
            })
            .collect()
    }

    pub fn upsilon(&self, u_phi: &[Set], s: Set) -> Set {
        let mut cur = self.down(s);
        loop {
            let next = u_phi
                .iter()
                .filter(|&&t| t & !cur == 0)
                .fold(0, |acc, &t| acc | 1 << self.join(t).unwrap());
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// Whether the lattice of closed sets satisfies the binary distributive
    /// law, meets being intersections and joins closures of unions.
    pub fn distributive(&self, ideals: &[Set]) -> bool {
        let all = self.all();
        let j = |a: Set, b: Set| Self::close(ideals, a | b, all);
        ideals.iter().all(|&x| {
            ideals.iter().all(|&y| {
                ideals
                    .iter()
                    .all(|&z| x & j(y, z) == j(x & y, x & z))
            })
        })
    }

    /// `(Φ = Υ on every subset, frame)` for the spec with nontrivial members
    /// `extra`.
    pub fn main_theorem_sides(&self, extra: &[Set]) -> (bool, bool) {
        let mut u: Vec<Set> = (0..self.n).map(|i| 1u64 << i).collect();
        u.extend_from_slice(extra);
        let ideals = self.ideals(&u);
        let u_phi = self.induced(&ideals);
        let eq = self
            .subsets()
            .all(|s| Self::close(&ideals, s, self.all()) == self.upsilon(&u_phi, s));
        (eq, self.distributive(&ideals))
    }
}

/// Every partial order on `{0, …, n-1}`, labelled.
pub fn all_labelled_posets(n: usize) -> Vec<Rel> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let mut le = vec![vec![false; n]; n];
        for (i, row) in le.iter_mut().enumerate() {
            row[i] = true;
        }
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                le[i][j] = true;
            }
        }
        let antisymmetric = (0..n).all(|i| (0..n).all(|j| i == j || !(le[i][j] && le[j][i])));
        let transitive = (0..n).all(|i| {
            (0..n).all(|j| (0..n).all(|k| !(le[i][j] && le[j][k]) || le[i][k]))
        });
        if antisymmetric && transitive {
            out.push(Rel { n, le });
        }
    }
    out
}

impl Rel {
    pub fn to_poset(&self) -> Poset {
        let pairs: Vec<(usize, usize)> = (0..self.n)
            .flat_map(|i| (0..self.n).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j && self.le[i][j])
            .collect();
        Poset::new((0..self.n).map(|i| format!("e{i}")).collect(), &pairs).unwrap()
    }
}
