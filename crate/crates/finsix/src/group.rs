//! Finite groups as multiplication tables, with permutation loading and presets.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
    perms: Option<Vec<Vec<usize>>>,
}

impl FiniteGroup {
    /// Builds a group from a Cayley table `table[a][b] = a·b`, checking every axiom.
    pub fn from_table(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<FiniteGroup> {
        let n = names.len();
        if n == 0 {
            return Err(Error::Axiom("empty set has no identity".into()));
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::Structural(format!("Cayley table must be {n}x{n}")));
        }
        if let Some((a, b)) = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .find(|&(a, b)| table[a][b] >= n)
        {
            return Err(Error::Structural(format!(
                "product {}*{} is not an element",
                names[a], names[b]
            )));
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        let at = |a: usize, b: usize| flat[a * n + b];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(Error::Axiom(format!(
                            "associativity fails at ({}, {}, {})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| at(e, a) == a && at(a, e) == a))
            .ok_or_else(|| Error::Axiom("no two-sided identity".into()))?;
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| at(a, b) == identity && at(b, a) == identity)
                .ok_or_else(|| Error::Axiom(format!("element {} has no inverse", names[a])))?;
            inverses.push(inv);
        }
        let mut seen = HashMap::new();
        for (i, nm) in names.iter().enumerate() {
            if seen.insert(nm.clone(), i).is_some() {
                return Err(Error::Structural(format!("duplicate element name {nm}")));
            }
        }
        Ok(FiniteGroup {
            names,
            table: flat,
            identity,
            inverses,
            perms: None,
        })
    }

    /// Trusted constructor for tables produced internally (already a group).
    pub(crate) fn from_flat_unchecked(names: Vec<String>, table: Vec<usize>) -> FiniteGroup {
        let n = names.len();
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e * n + a] == a))
            .expect("identity");
        let mut inverses = vec![0; n];
        for a in 0..n {
            inverses[a] = (0..n).find(|&b| table[a * n + b] == identity).expect("inverse");
        }
        FiniteGroup {
            names,
            table,
            identity,
            inverses,
            perms: None,
        }
    }

    /// Closes a set of permutations (0-based image vectors of common degree).
    /// Elements are ordered lexicographically by image vector, identity first.
    pub fn from_permutations(gens: &[Vec<usize>]) -> Result<FiniteGroup> {
        let degree = gens.first().map(|g| g.len()).unwrap_or(1);
        for g in gens {
            if g.len() != degree {
                return Err(Error::Structural("generators of different degree".into()));
            }
            let mut s = g.clone();
            s.sort_unstable();
            if s != (0..degree).collect::<Vec<_>>() {
                return Err(Error::Structural(format!("{g:?} is not a permutation")));
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(id.clone());
        queue.push_back(id);
        while let Some(p) = queue.pop_front() {
            for g in gens {
                let q = compose_perm(g, &p);
                if seen.insert(q.clone()) {
                    queue.push_back(q);
                }
            }
        }
        let elems: Vec<Vec<usize>> = seen.into_iter().collect();
        Ok(FiniteGroup::from_perm_elements(elems))
    }

    fn from_perm_elements(elems: Vec<Vec<usize>>) -> FiniteGroup {
        let n = elems.len();
        let index: HashMap<&Vec<usize>, usize> = elems.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = index[&compose_perm(&elems[a], &elems[b])];
            }
        }
        let names = elems.iter().map(|p| cycle_name(p)).collect();
        let mut g = FiniteGroup::from_flat_unchecked(names, table);
        g.perms = Some(elems);
        g
    }

    pub fn symmetric(n: usize) -> FiniteGroup {
        if n <= 1 {
            return FiniteGroup::cyclic(1);
        }
        let mut gens = vec![transposition(n, 0, 1)];
        if n > 2 {
            gens.push((0..n).map(|i| (i + 1) % n).collect());
        }
        FiniteGroup::from_permutations(&gens).expect("symmetric group")
    }

    pub fn cyclic(n: usize) -> FiniteGroup {
        let n = n.max(1);
        FiniteGroup::from_permutations(&[(0..n).map(|i| (i + 1) % n).collect()]).expect("cyclic group")
    }

    pub fn dihedral4() -> FiniteGroup {
        FiniteGroup::from_permutations(&[vec![1, 2, 3, 0], vec![2, 1, 0, 3]]).expect("D4")
    }

    /// The quaternion group in its left regular permutation representation.
    pub fn quaternion() -> FiniteGroup {
        // elements (sign, unit) with unit in {1,i,j,k}; index = 4*sign + unit
        let mul_unit = |a: usize, b: usize| -> (usize, usize) {
            const T: [[(usize, usize); 4]; 4] = [
                [(0, 0), (0, 1), (0, 2), (0, 3)],
                [(0, 1), (1, 0), (0, 3), (1, 2)],
                [(0, 2), (1, 3), (1, 0), (0, 1)],
                [(0, 3), (0, 2), (1, 1), (1, 0)],
            ];
            T[a][b]
        };
        let mul = |x: usize, y: usize| -> usize {
            let (s, u) = mul_unit(x % 4, y % 4);
            let sign = (x / 4 + y / 4 + s) % 2;
            4 * sign + u
        };
        let left = |x: usize| -> Vec<usize> { (0..8).map(|y| mul(x, y)).collect() };
        FiniteGroup::from_permutations(&[left(1), left(2)]).expect("Q8")
    }

    pub fn c2xc4() -> FiniteGroup {
        FiniteGroup::from_permutations(&[vec![1, 0, 2, 3, 4, 5], vec![0, 1, 3, 4, 5, 2]]).expect("C2xC4")
    }

    /// Named presets: s3, s4, d4, q8, c2xc4, cN, trivial.
    pub fn preset(name: &str) -> Result<FiniteGroup> {
        let lower = name.trim().to_ascii_lowercase();
        match lower.as_str() {
            "trivial" | "1" | "c1" => Ok(FiniteGroup::cyclic(1)),
            "s3" => Ok(FiniteGroup::symmetric(3)),
            "s4" => Ok(FiniteGroup::symmetric(4)),
            "d4" | "d8" => Ok(FiniteGroup::dihedral4()),
            "q8" => Ok(FiniteGroup::quaternion()),
            "c2xc4" | "c2*c4" => Ok(FiniteGroup::c2xc4()),
            s if s.starts_with('c') => s[1..]
                .parse::<usize>()
                .ok()
                .filter(|&n| n >= 1)
                .map(FiniteGroup::cyclic)
                .ok_or_else(|| Error::Parse(format!("unknown group preset `{name}`"))),
            s if s.starts_with('s') => s[1..]
                .parse::<usize>()
                .ok()
                .filter(|&n| (1..=5).contains(&n))
                .map(FiniteGroup::symmetric)
                .ok_or_else(|| Error::Parse(format!("unknown group preset `{name}`"))),
            _ => Err(Error::Parse(format!("unknown group preset `{name}`"))),
        }
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }
    pub fn identity(&self) -> usize {
        self.identity
    }
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }
    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }
    pub fn permutation(&self, a: usize) -> Option<&[usize]> {
        self.perms.as_ref().map(|p| p[a].as_slice())
    }
    pub fn degree(&self) -> Option<usize> {
        self.perms.as_ref().map(|p| p[0].len())
    }

    pub fn cayley_table(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        (0..n).map(|a| self.table[a * n..(a + 1) * n].to_vec()).collect()
    }

    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Looks an element up by name, or for permutation groups by cycle notation.
    pub fn parse_element(&self, s: &str) -> Result<usize> {
        let t = s.trim();
        if let Some(i) = self.names.iter().position(|n| n == t) {
            return Ok(i);
        }
        if let Some(perms) = &self.perms {
            let p = parse_cycles(t, perms[0].len())?;
            if let Some(i) = perms.iter().position(|q| *q == p) {
                return Ok(i);
            }
        }
        Err(Error::Parse(format!("`{s}` is not an element of the group")))
    }

    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        let mut out = vec![self.identity];
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn is_subgroup(&self, elems: &[usize]) -> bool {
        if elems.is_empty() || elems.iter().any(|&e| e >= self.order()) {
            return false;
        }
        let set: BTreeSet<usize> = elems.iter().copied().collect();
        set.contains(&self.identity)
            && set.iter().all(|&a| set.contains(&self.inv(a)))
            && set.iter().all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    pub fn check_subgroup(&self, elems: &[usize]) -> Result<Vec<usize>> {
        if !self.is_subgroup(elems) {
            return Err(Error::Precondition("element set is not a subgroup".into()));
        }
        let mut v = elems.to_vec();
        v.sort_unstable();
        v.dedup();
        Ok(v)
    }

    /// All subgroups as sorted element lists, sorted by (order, elements).
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut frontier: Vec<Vec<usize>> = self.elements().map(|g| self.generated(&[g])).collect();
        while let Some(h) = frontier.pop() {
            if !all.insert(h.clone()) {
                continue;
            }
            for g in self.elements() {
                if h.binary_search(&g).is_err() {
                    let mut gens = h.clone();
                    gens.push(g);
                    let j = self.generated(&gens);
                    if !all.contains(&j) {
                        frontier.push(j);
                    }
                }
            }
        }
        let mut v: Vec<Vec<usize>> = all.into_iter().collect();
        v.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        v
    }

    pub fn conjugate_subgroup(&self, h: &[usize], g: usize) -> Vec<usize> {
        let mut v: Vec<usize> = h.iter().map(|&x| self.conj(g, x)).collect();
        v.sort_unstable();
        v
    }

    /// One subgroup per conjugacy class: the lexicographically least member.
    pub fn subgroups_up_to_conjugacy(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        for h in self.subgroups() {
            let least = self
                .elements()
                .map(|g| self.conjugate_subgroup(&h, g))
                .min()
                .expect("nonempty");
            if least == h {
                out.push(h);
            }
        }
        out
    }

    /// The subgroup as a group in its own right, with the inclusion map.
    pub fn subgroup_group(&self, elems: &[usize]) -> (FiniteGroup, Vec<usize>) {
        let pos: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let m = elems.len();
        let mut table = vec![0; m * m];
        for (i, &a) in elems.iter().enumerate() {
            for (j, &b) in elems.iter().enumerate() {
                table[i * m + j] = pos[&self.mul(a, b)];
            }
        }
        let names = elems.iter().map(|&e| self.names[e].clone()).collect();
        let mut sub = FiniteGroup::from_flat_unchecked(names, table);
        if let Some(perms) = &self.perms {
            sub.perms = Some(elems.iter().map(|&e| perms[e].clone()).collect());
        }
        (sub, elems.to_vec())
    }

    /// Direct product with pairs ordered lexicographically, element `(a, b)` at `a * |rhs| + b`.
    pub fn product(&self, rhs: &FiniteGroup) -> FiniteGroup {
        let (n, m) = (self.order(), rhs.order());
        let mut table = vec![0; n * m * n * m];
        for a in 0..n {
            for b in 0..m {
                for c in 0..n {
                    for d in 0..m {
                        table[(a * m + b) * n * m + c * m + d] = self.mul(a, c) * m + rhs.mul(b, d);
                    }
                }
            }
        }
        let names = (0..n)
            .flat_map(|a| (0..m).map(move |b| (a, b)))
            .map(|(a, b)| format!("({},{})", self.names[a], rhs.names[b]))
            .collect();
        FiniteGroup::from_flat_unchecked(names, table)
    }

    /// A short generating set, chosen greedily by element index.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        while span.len() < self.order() {
            let best = self
                .elements()
                .filter(|g| span.binary_search(g).is_err())
                .max_by_key(|&g| {
                    let mut t = gens.clone();
                    t.push(g);
                    (self.generated(&t).len(), usize::MAX - g)
                })
                .expect("element outside span");
            gens.push(best);
            span = self.generated(&gens);
        }
        gens
    }

    /// Searches for an isomorphism `self → other`, mapping generators first.
    pub fn find_isomorphism(&self, other: &FiniteGroup) -> Option<Vec<usize>> {
        if self.order() != other.order() {
            return None;
        }
        let mut ord_a: Vec<usize> = self.elements().map(|a| self.element_order(a)).collect();
        let mut ord_b: Vec<usize> = other.elements().map(|a| other.element_order(a)).collect();
        let orders_b = ord_b.clone();
        ord_a.sort_unstable();
        ord_b.sort_unstable();
        if ord_a != ord_b {
            return None;
        }
        let gens = self.generators();
        // every element as a word: parent pointer plus generator index
        let mut word: Vec<Option<(usize, usize)>> = vec![None; self.order()];
        let mut order_bfs = vec![self.identity];
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut q = VecDeque::from([self.identity]);
        while let Some(x) = q.pop_front() {
            for (gi, &g) in gens.iter().enumerate() {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    word[y] = Some((x, gi));
                    order_bfs.push(y);
                    q.push_back(y);
                }
            }
        }
        let cands: Vec<Vec<usize>> = gens
            .iter()
            .map(|&g| {
                let o = self.element_order(g);
                other.elements().filter(|&b| orders_b[b] == o).collect()
            })
            .collect();
        let mut choice = vec![0usize; gens.len()];
        loop {
            let images: Vec<usize> = choice.iter().enumerate().map(|(i, &c)| cands[i][c]).collect();
            let mut map = vec![usize::MAX; self.order()];
            map[self.identity] = other.identity;
            for &y in &order_bfs[1..] {
                let (x, gi) = word[y].expect("word");
                map[y] = other.mul(map[x], images[gi]);
            }
            let mut hit = vec![false; other.order()];
            let bij = map.iter().all(|&m| !std::mem::replace(&mut hit[m], true));
            if bij
                && self
                    .elements()
                    .all(|a| self.elements().all(|b| map[self.mul(a, b)] == other.mul(map[a], map[b])))
            {
                return Some(map);
            }
            // advance odometer
            let mut i = 0;
            loop {
                if i == choice.len() {
                    return None;
                }
                choice[i] += 1;
                if choice[i] < cands[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }

    /// Left cosets gH: returns (coset index of each element, minimal representatives).
    pub fn left_cosets(&self, h: &[usize]) -> (Vec<usize>, Vec<usize>) {
        let mut idx = vec![usize::MAX; self.order()];
        let mut reps = Vec::new();
        for g in self.elements() {
            if idx[g] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(g);
            for &x in h {
                idx[self.mul(g, x)] = c;
            }
        }
        (idx, reps)
    }

    /// Right cosets Hg.
    pub fn right_cosets(&self, h: &[usize]) -> (Vec<usize>, Vec<usize>) {
        let mut idx = vec![usize::MAX; self.order()];
        let mut reps = Vec::new();
        for g in self.elements() {
            if idx[g] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(g);
            for &x in h {
                idx[self.mul(x, g)] = c;
            }
        }
        (idx, reps)
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "group of order {}", self.order())
    }
}

/// `(p∘q)(i) = p(q(i))`.
pub fn compose_perm(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&i| p[i]).collect()
}

fn transposition(n: usize, a: usize, b: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.swap(a, b);
    p
}

/// Cycle notation on points 1..n; `e` for the identity.
pub fn cycle_name(p: &[usize]) -> String {
    let n = p.len();
    let sep = if n > 9 { "," } else { "" };
    let mut seen = vec![false; n];
    let mut out = String::new();
    for s in 0..n {
        if seen[s] || p[s] == s {
            seen[s] = true;
            continue;
        }
        let mut cyc = Vec::new();
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            cyc.push((x + 1).to_string());
            x = p[x];
        }
        out.push('(');
        out.push_str(&cyc.join(sep));
        out.push(')');
    }
    if out.is_empty() {
        "e".to_string()
    } else {
        out
    }
}

/// Parses cycle notation such as `(12)(34)` or `(1,10)` into a 0-based image vector.
pub fn parse_cycles(s: &str, degree: usize) -> Result<Vec<usize>> {
    let mut p: Vec<usize> = (0..degree).collect();
    let t = s.trim();
    if t == "e" || t == "()" || t.is_empty() {
        return Ok(p);
    }
    let bad = || Error::Parse(format!("bad cycle notation `{s}`"));
    let mut rest = t;
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    while !rest.is_empty() {
        rest = rest.trim_start();
        let body_end = rest.find(')').ok_or_else(bad)?;
        if !rest.starts_with('(') {
            return Err(bad());
        }
        let body = &rest[1..body_end];
        let pts: Vec<usize> = if body.contains(',') || body.contains(' ') {
            body.split(|c| c == ',' || c == ' ')
                .filter(|x| !x.is_empty())
                .map(|x| x.parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_>>()?
        } else {
            body.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
                .collect::<Result<_>>()?
        };
        if pts.iter().any(|&x| x == 0 || x > degree) {
            return Err(bad());
        }
        cycles.push(pts.into_iter().map(|x| x - 1).collect());
        rest = &rest[body_end + 1..];
    }
    // product of cycles, rightmost applied first
    for cyc in cycles.iter().rev() {
        let mut c: Vec<usize> = (0..degree).collect();
        for w in 0..cyc.len() {
            c[cyc[w]] = cyc[(w + 1) % cyc.len()];
        }
        p = compose_perm(&c, &p);
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_orders() {
        assert_eq!(FiniteGroup::symmetric(3).order(), 6);
        assert_eq!(FiniteGroup::symmetric(4).order(), 24);
        assert_eq!(FiniteGroup::dihedral4().order(), 8);
        assert_eq!(FiniteGroup::quaternion().order(), 8);
        assert_eq!(FiniteGroup::c2xc4().order(), 8);
        assert_eq!(FiniteGroup::cyclic(1).order(), 1);
    }

    #[test]
    fn identity_first_and_named() {
        let g = FiniteGroup::symmetric(3);
        assert_eq!(g.identity(), 0);
        assert_eq!(g.name(0), "e");
        assert!(g.parse_element("(12)").is_ok());
        assert_eq!(g.element_order(g.parse_element("(123)").unwrap()), 3);
    }

    #[test]
    fn subgroup_counts() {
        // S3: 1, three C2, C3, S3
        assert_eq!(FiniteGroup::symmetric(3).subgroups().len(), 6);
        assert_eq!(FiniteGroup::symmetric(3).subgroups_up_to_conjugacy().len(), 4);
        assert_eq!(FiniteGroup::symmetric(4).subgroups().len(), 30);
        assert_eq!(FiniteGroup::symmetric(4).subgroups_up_to_conjugacy().len(), 11);
        assert_eq!(FiniteGroup::quaternion().subgroups().len(), 6);
        assert_eq!(FiniteGroup::dihedral4().subgroups().len(), 10);
    }

    #[test]
    fn q8_not_d4() {
        assert!(FiniteGroup::quaternion().find_isomorphism(&FiniteGroup::dihedral4()).is_none());
        let a = FiniteGroup::cyclic(4).product(&FiniteGroup::cyclic(2));
        assert!(a.find_isomorphism(&FiniteGroup::c2xc4()).is_some());
    }

    #[test]
    fn bad_table_names_axiom() {
        let names = vec!["a".to_string(), "b".to_string()];
        let err = FiniteGroup::from_table(names, vec![vec![0, 0], vec![0, 1]]).unwrap_err();
        assert!(matches!(err, Error::Axiom(_)));
    }

    #[test]
    fn cycle_roundtrip() {
        let p = parse_cycles("(12)(34)", 4).unwrap();
        assert_eq!(p, vec![1, 0, 3, 2]);
        assert_eq!(cycle_name(&p), "(12)(34)");
        let q = parse_cycles("(123)", 3).unwrap();
        assert_eq!(cycle_name(&q), "(123)");
    }
}
