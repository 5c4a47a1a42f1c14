use std::fmt;

/// Bit index of the pair `{i, j}` (`i != j`) in an edge mask.
pub const fn pair_index(i: usize, j: usize) -> usize {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    b * (b - 1) / 2 + a
}

fn mask_of(edges: &[(usize, usize)]) -> u32 {
    edges.iter().fold(0, |m, &(i, j)| m | 1 << pair_index(i, j))
}

/// Mask of all pairs inside `[0, m)`.
pub const fn pairs_below(m: usize) -> u32 {
    if m < 2 {
        0
    } else {
        let p = m * (m - 1) / 2;
        if p >= 32 {
            u32::MAX
        } else {
            (1u32 << p) - 1
        }
    }
}

/// A totally labelled graph on `[0, k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FlagType {
    name: String,
    k: usize,
    edges: u32,
}

impl FlagType {
    pub fn new(name: &str, k: usize, edges: &[(usize, usize)]) -> Self {
        assert!(k <= 8, "types are limited to 8 vertices");
        assert!(edges.iter().all(|&(i, j)| i < k && j < k && i != j));
        FlagType {
            name: name.to_string(),
            k,
            edges: mask_of(edges),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges >> pair_index(i, j) & 1 == 1
    }

    /// `sigma|_eta`: the type induced on the labels `eta`, renumbered.
    pub fn restrict(&self, eta: &[usize]) -> FlagType {
        let mut edges = Vec::new();
        for a in 0..eta.len() {
            for b in a + 1..eta.len() {
                if self.has_edge(eta[a], eta[b]) {
                    edges.push((a, b));
                }
            }
        }
        FlagType::new(&format!("{}|{:?}", self.name, eta), eta.len(), &edges)
    }

    pub fn same_shape(&self, other: &FlagType) -> bool {
        self.k == other.k && self.edges == other.edges
    }
}

/// A partially labelled graph: vertices `[0, k)` carry the labels of its
/// type, vertices `[k, l)` are unlabelled.
#[derive(Clone, Debug)]
pub struct Flag {
    name: String,
    ty: FlagType,
    l: usize,
    edges: u32,
    patterns: Vec<u32>,
}

impl Flag {
    pub fn new(name: &str, ty: FlagType, l: usize, edges: &[(usize, usize)]) -> Self {
        assert!(l >= ty.k && l <= 8, "flag size out of range");
        assert!(l - ty.k <= 5, "at most five unlabelled vertices");
        assert!(edges.iter().all(|&(i, j)| i < l && j < l && i != j));
        let mask = mask_of(edges);
        assert_eq!(
            mask & pairs_below(ty.k),
            ty.edges,
            "flag {name} does not restrict to its type"
        );
        let mut patterns = Vec::new();
        let unlabelled: Vec<usize> = (ty.k..l).collect();
        for perm in permutations(&unlabelled) {
            let mut map: Vec<usize> = (0..l).collect();
            for (slot, &target) in unlabelled.iter().zip(&perm) {
                map[*slot] = target;
            }
            let permuted = edges
                .iter()
                .fold(0u32, |m, &(i, j)| m | 1 << pair_index(map[i], map[j]));
            if !patterns.contains(&permuted) {
                patterns.push(permuted);
            }
        }
        Flag {
            name: name.to_string(),
            ty,
            l,
            edges: mask,
            patterns,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn flag_type(&self) -> &FlagType {
        &self.ty
    }

    pub fn k(&self) -> usize {
        self.ty.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges >> pair_index(i, j) & 1 == 1
    }

    /// Edge masks of all relabellings of the unlabelled vertices.
    pub fn patterns(&self) -> &[u32] {
        &self.patterns
    }

    pub fn is_triangle_free(&self) -> bool {
        (0..self.l).all(|a| {
            (a + 1..self.l).all(|b| {
                !self.has_edge(a, b)
                    || (b + 1..self.l).all(|c| !(self.has_edge(a, c) && self.has_edge(b, c)))
            })
        })
    }

    /// All flags of type `ty` on `l` vertices, one per isomorphism class.
    pub fn all_extensions(ty: &FlagType, l: usize) -> Vec<Flag> {
        let free_pairs: Vec<(usize, usize)> = (0..l)
            .flat_map(|j| (0..j).map(move |i| (i, j)))
            .filter(|&(_, j)| j >= ty.k)
            .collect();
        let mut seen: Vec<u32> = Vec::new();
        let mut out = Vec::new();
        for bits in 0u64..(1 << free_pairs.len()) {
            let mut edges: Vec<(usize, usize)> = Vec::new();
            for a in 0..ty.k {
                for b in a + 1..ty.k {
                    if ty.has_edge(a, b) {
                        edges.push((a, b));
                    }
                }
            }
            for (t, &p) in free_pairs.iter().enumerate() {
                if bits >> t & 1 == 1 {
                    edges.push(p);
                }
            }
            let f = Flag::new(&format!("ext{}", out.len()), ty.clone(), l, &edges);
            if f.patterns.iter().any(|p| seen.contains(p)) {
                continue;
            }
            seen.push(f.edges);
            out.push(f);
        }
        out
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// The types used by the bound proofs. Labels are 0-based: in `N`, `I`,
/// `P`, `Q1`, `Q2`, `D` the labels 0 and 1 are the pair `(v1, v2)`.
pub mod types {
    use super::FlagType;

    pub fn empty() -> FlagType {
        FlagType::new("0", 0, &[])
    }
    pub fn one() -> FlagType {
        FlagType::new("1", 1, &[])
    }
    /// Two adjacent labelled vertices.
    pub fn e() -> FlagType {
        FlagType::new("E", 2, &[(0, 1)])
    }
    /// Two non-adjacent labelled vertices.
    pub fn n() -> FlagType {
        FlagType::new("N", 2, &[])
    }
    /// Three independent labelled vertices.
    pub fn i() -> FlagType {
        FlagType::new("I", 3, &[])
    }
    /// `v1, v2` and a common neighbour `w`.
    pub fn p() -> FlagType {
        FlagType::new("P", 3, &[(0, 2), (1, 2)])
    }
    /// `v1, v2, w` as in `P`, plus a fourth vertex adjacent to `v1`.
    pub fn d() -> FlagType {
        FlagType::new("D", 4, &[(0, 2), (1, 2), (0, 3)])
    }
    /// `v1, v2` and a neighbour of `v1` only.
    pub fn q1() -> FlagType {
        FlagType::new("Q1", 3, &[(0, 2)])
    }
    /// `v1, v2` and a neighbour of `v2` only.
    pub fn q2() -> FlagType {
        FlagType::new("Q2", 3, &[(1, 2)])
    }
}

/// The flags used by the bound proofs.
pub mod flags {
    use super::{types, Flag};

    /// Type 1: the labelled vertex and a neighbour; its density is `e(v)`.
    pub fn e() -> Flag {
        Flag::new("e", types::one(), 2, &[(0, 1)])
    }
    /// Type 0: a single edge; its density is `rho`.
    pub fn edge() -> Flag {
        Flag::new("rho", types::empty(), 2, &[(0, 1)])
    }
    /// Type 0: the path on three vertices.
    pub fn p3() -> Flag {
        Flag::new("P3", types::empty(), 3, &[(0, 1), (1, 2)])
    }
    /// Type 1: path with the labelled vertex in the centre.
    pub fn p3_1() -> Flag {
        Flag::new("P3^1", types::one(), 3, &[(0, 1), (0, 2)])
    }
    /// Type 1: path with the labelled vertex at one end.
    pub fn p3_1b() -> Flag {
        Flag::new("P3^{1,b}", types::one(), 3, &[(0, 1), (1, 2)])
    }
    /// Type E: path `v1 - v2 - x`.
    pub fn p3_eb() -> Flag {
        Flag::new("P3^{E,b}", types::e(), 3, &[(0, 1), (1, 2)])
    }
    /// Type N: common neighbour.
    pub fn p3n() -> Flag {
        Flag::new("P3^N", types::n(), 3, &[(0, 2), (1, 2)])
    }
    /// Type N: common non-neighbour.
    pub fn i3n() -> Flag {
        Flag::new("I3^N", types::n(), 3, &[])
    }
    /// Type N: neighbour of `v2` that is not a neighbour of `v1`.
    pub fn p3n_bar_c() -> Flag {
        Flag::new("P3bar^{N,c}", types::n(), 3, &[(1, 2)])
    }
    /// Type N: neighbour of `v1` that is not a neighbour of `v2`.
    pub fn p3n_bar_b() -> Flag {
        Flag::new("P3bar^{N,b}", types::n(), 3, &[(0, 2)])
    }
    /// Type I: an unlabelled vertex adjacent exactly to the labels in `s`.
    pub fn f_i(s: &[usize]) -> Flag {
        let edges: Vec<_> = s.iter().map(|&i| (i, 3)).collect();
        Flag::new(&format!("F^I_{s:?}"), types::i(), 4, &edges)
    }
    pub fn s4_i() -> Flag {
        Flag::new("S4^I", types::i(), 4, &[(0, 3), (1, 3), (2, 3)])
    }
    pub fn t4_i() -> Flag {
        Flag::new("T4^I", types::i(), 4, &[(2, 3)])
    }
    pub fn k32_p() -> Flag {
        Flag::new(
            "K32^P",
            types::p(),
            5,
            &[(0, 2), (1, 2), (2, 3), (0, 4), (1, 4), (3, 4)],
        )
    }
    pub fn u5_p() -> Flag {
        Flag::new("U5^P", types::p(), 5, &[(0, 2), (1, 2), (2, 3), (3, 4)])
    }
    pub fn v5_p1() -> Flag {
        Flag::new(
            "V5^{P,1}",
            types::p(),
            5,
            &[(0, 2), (1, 2), (2, 3), (3, 4), (0, 4)],
        )
    }
    pub fn v5_p2() -> Flag {
        Flag::new(
            "V5^{P,2}",
            types::p(),
            5,
            &[(0, 2), (1, 2), (2, 3), (3, 4), (1, 4)],
        )
    }
    pub fn v5_d1() -> Flag {
        Flag::new(
            "V5^{D,1}",
            types::d(),
            5,
            &[(0, 2), (1, 2), (0, 3), (2, 4), (3, 4)],
        )
    }
    pub fn k32_n() -> Flag {
        Flag::new(
            "K32^N",
            types::n(),
            5,
            &[(0, 3), (0, 4), (1, 3), (1, 4), (2, 3), (2, 4)],
        )
    }
    pub fn s4_n() -> Flag {
        Flag::new("S4^N", types::n(), 4, &[(0, 2), (1, 2), (2, 3)])
    }
    pub fn t4_n() -> Flag {
        Flag::new("T4^N", types::n(), 4, &[(2, 3)])
    }
    pub fn v4_n1() -> Flag {
        Flag::new("V4^{N,1}", types::n(), 4, &[(0, 2), (2, 3)])
    }
    pub fn v4_n2() -> Flag {
        Flag::new("V4^{N,2}", types::n(), 4, &[(1, 2), (2, 3)])
    }
    pub fn p4_n() -> Flag {
        Flag::new("P4^N", types::n(), 4, &[(0, 2), (2, 3), (1, 3)])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_indices_are_dense() {
        let mut seen = vec![false; 15];
        for j in 0..6 {
            for i in 0..j {
                seen[pair_index(i, j)] = true;
            }
        }
        assert!(seen.iter().all(|&b| b));
        assert_eq!(pairs_below(6), (1 << 15) - 1);
    }

    #[test]
    fn unlabelled_symmetry_collapses_patterns() {
        assert_eq!(flags::k32_n().patterns().len(), 3);
        assert_eq!(flags::v5_p1().patterns().len(), 2);
        assert_eq!(flags::p3_1().patterns().len(), 1);
        assert_eq!(flags::p3_1b().patterns().len(), 2);
    }

    #[test]
    fn extensions_of_type_n_on_three_vertices() {
        // third vertex: adjacent to none, first, second, or both
        assert_eq!(Flag::all_extensions(&types::n(), 3).len(), 4);
        // unlabelled graphs on three vertices
        assert_eq!(Flag::all_extensions(&types::empty(), 3).len(), 4);
    }

    #[test]
    #[should_panic(expected = "does not restrict")]
    fn flag_must_extend_type() {
        Flag::new("bad", types::e(), 3, &[(1, 2)]);
    }

    #[test]
    fn named_flags_are_triangle_free() {
        use flags::*;
        for f in [k32_p(), u5_p(), v5_p1(), v5_p2(), v5_d1(), k32_n(), s4_n(), p4_n()] {
            assert!(f.is_triangle_free(), "{}", f.name());
        }
    }
}
