//! Braid words and the combinatorics of their closures.

use std::fmt;

use serde_json::{json, Value};

use crate::Error;

/// A word in the Artin generators; letter `±p` is `sigma_p^{±1}` acting on strands `p, p+1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    word: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, word: Vec<i32>) -> Result<Self, Error> {
        if strands == 0 {
            return Err(Error::Parse("a braid needs at least one strand".into()));
        }
        for &w in &word {
            let p = w.unsigned_abs() as usize;
            if w == 0 || p >= strands {
                return Err(Error::PositionOutOfRange { pos: w as i64, strands });
            }
        }
        Ok(BraidWord { strands, word })
    }

    /// Parse `"N: w1 w2 ..."`.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let (head, tail) = text
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected \"N: w1 w2 ...\", got {text:?}")))?;
        let strands: usize =
            head.trim().parse().map_err(|_| Error::Parse(format!("bad strand count {:?}", head.trim())))?;
        let word = tail
            .split_whitespace()
            .map(|w| w.parse::<i32>().map_err(|_| Error::Parse(format!("bad letter {w:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(strands, word)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn word(&self) -> &[i32] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// Letters as (0-based position, sign).
    pub fn letters(&self) -> impl Iterator<Item = (usize, i32)> + '_ {
        self.word.iter().map(|&w| (w.unsigned_abs() as usize - 1, w.signum()))
    }

    pub fn writhe(&self) -> i64 {
        self.word.iter().map(|&w| w.signum() as i64).sum()
    }

    pub fn to_json(&self) -> Value {
        json!({"strands": self.strands, "word": self.word})
    }

    pub fn from_json(v: &Value) -> Result<Self, Error> {
        let bad = || Error::Parse("braid JSON needs \"strands\" and \"word\"".into());
        let n = v.get("strands").and_then(Value::as_u64).ok_or_else(bad)? as usize;
        let word = v
            .get("word")
            .and_then(Value::as_array)
            .ok_or_else(bad)?
            .iter()
            .map(|x| x.as_i64().map(|x| x as i32).ok_or_else(bad))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(n, word)
    }

    /// Cancel adjacent inverse letters.
    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<i32> = Vec::with_capacity(self.word.len());
        for &w in &self.word {
            if out.last() == Some(&-w) {
                out.pop();
            } else {
                out.push(w);
            }
        }
        BraidWord { strands: self.strands, word: out }
    }

    /// `g * self * g^{-1}`, reduced.
    pub fn conjugate(&self, g: i32) -> Self {
        let mut word = vec![g];
        word.extend_from_slice(&self.word);
        word.push(-g);
        BraidWord::new(self.strands, word).expect("generator in range").free_reduce()
    }

    /// Add a strand and append `sigma_N^{sign}`.
    pub fn stabilize(&self, sign: i32) -> Self {
        let mut word = self.word.clone();
        word.push(sign.signum() * self.strands as i32);
        BraidWord { strands: self.strands + 1, word }
    }

    /// Conjugates by every generator and its inverse, then both stabilizations.
    pub fn markov_moves(&self) -> Vec<BraidWord> {
        let mut out = Vec::new();
        for p in 1..self.strands as i32 {
            out.push(self.conjugate(p));
            out.push(self.conjugate(-p));
        }
        out.push(self.stabilize(1));
        out.push(self.stabilize(-1));
        out
    }

    /// Remove every strand of closure component `comp`, dropping the letters that touch it.
    pub fn delete_component(&self, comp: usize) -> Self {
        let c = self.close();
        let mut pos: Vec<usize> = (0..self.strands).collect();
        let mut word = Vec::new();
        for (p, s) in self.letters() {
            let (a, b) = (pos[p], pos[p + 1]);
            if c.component_of_strand[a] != comp && c.component_of_strand[b] != comp {
                let before = pos[..p].iter().filter(|&&x| c.component_of_strand[x] != comp).count();
                word.push(s * (before as i32 + 1));
            }
            pos.swap(p, p + 1);
        }
        let strands = self.strands - c.strands_per_component[comp];
        BraidWord { strands: strands.max(1), word }
    }

    pub fn close(&self) -> LinkClosure {
        LinkClosure::of(self)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "{}:", self.strands)?;
        for w in &self.word {
            write!(f, " {w}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for BraidWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Self::parse(s)
    }
}

/// Components, linking data and per-crossing component labels of a braid closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkClosure {
    pub components: usize,
    /// Component of each strand, indexed by its bottom position.
    pub component_of_strand: Vec<usize>,
    pub strands_per_component: Vec<usize>,
    /// Symmetric; the diagonal holds the signed self-crossing counts.
    pub linking: Vec<Vec<i64>>,
    /// Components of the two incoming strands at every letter.
    pub crossing_components: Vec<(usize, usize)>,
    /// `permutation[i]` is the bottom strand that ends at top position `i`.
    pub permutation: Vec<usize>,
}

impl LinkClosure {
    fn of(b: &BraidWord) -> Self {
        let n = b.strands;
        let mut pos: Vec<usize> = (0..n).collect();
        let mut incoming = Vec::with_capacity(b.len());
        for (p, _) in b.letters() {
            incoming.push((pos[p], pos[p + 1]));
            pos.swap(p, p + 1);
        }
        // the strand ending at top position i continues at bottom position i
        let mut next = vec![0; n];
        for (i, &s) in pos.iter().enumerate() {
            next[s] = i;
        }
        let mut comp = vec![usize::MAX; n];
        let mut l = 0;
        for s in 0..n {
            if comp[s] == usize::MAX {
                let mut x = s;
                while comp[x] == usize::MAX {
                    comp[x] = l;
                    x = next[x];
                }
                l += 1;
            }
        }
        let mut twice = vec![vec![0i64; l]; l];
        let mut crossing_components = Vec::with_capacity(b.len());
        for ((_, s), &(a, c)) in b.letters().zip(&incoming) {
            let (i, j) = (comp[a], comp[c]);
            crossing_components.push((i, j));
            if i == j {
                twice[i][i] += 2 * s as i64;
            } else {
                twice[i][j] += s as i64;
                twice[j][i] += s as i64;
            }
        }
        let linking = twice
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&x| {
                        assert!(x % 2 == 0, "odd inter-component crossing count");
                        x / 2
                    })
                    .collect()
            })
            .collect();
        let strands_per_component = (0..l).map(|j| comp.iter().filter(|&&c| c == j).count()).collect();
        LinkClosure {
            components: l,
            component_of_strand: comp,
            strands_per_component,
            linking,
            crossing_components,
            permutation: pos,
        }
    }

    pub fn lk(&self, i: usize, j: usize) -> i64 {
        self.linking[i][j]
    }

    /// `sum_i l_ij`, diagonal included.
    pub fn column_sum(&self, j: usize) -> i64 {
        (0..self.components).map(|i| self.linking[i][j]).sum()
    }

    pub fn off_diagonal_sum(&self) -> i64 {
        (0..self.components).flat_map(|i| (i + 1..self.components).map(move |j| (i, j))).map(|(i, j)| self.linking[i][j]).sum()
    }

    /// Off-diagonal linking numbers, sorted.
    pub fn mutual_linking(&self) -> Vec<i64> {
        let mut v: Vec<i64> = (0..self.components)
            .flat_map(|i| (i + 1..self.components).map(move |j| (i, j)))
            .map(|(i, j)| self.linking[i][j])
            .collect();
        v.sort();
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        let b = BraidWord::parse("3: 1 -2").unwrap();
        assert_eq!(b.word(), &[1, -2]);
        assert_eq!(b.to_string().parse::<BraidWord>().unwrap(), b);
        assert_eq!(BraidWord::parse("1:").unwrap().len(), 0);
        assert!(matches!(BraidWord::parse("2: 2"), Err(Error::PositionOutOfRange { .. })));
        assert!(matches!(BraidWord::parse("2 1 1"), Err(Error::Parse(_))));
        assert!(matches!(BraidWord::parse("2: x"), Err(Error::Parse(_))));
    }

    #[test]
    fn hopf_trefoil_split() {
        let h = BraidWord::parse("2: 1 1").unwrap().close();
        assert_eq!(h.components, 2);
        assert_eq!(h.linking, vec![vec![0, 1], vec![1, 0]]);
        let t = BraidWord::parse("2: 1 1 1").unwrap().close();
        assert_eq!(t.components, 1);
        assert_eq!(t.linking, vec![vec![3]]);
        let s = BraidWord::parse("2:").unwrap().close();
        assert_eq!(s.components, 2);
        assert_eq!(s.lk(0, 1), 0);
    }

    #[test]
    fn moves() {
        let t = BraidWord::parse("2: 1 1 1").unwrap();
        let st = t.stabilize(1);
        assert_eq!(st.to_string(), "3: 1 1 1 2");
        assert_eq!(st.close().components, 1);
        assert_eq!(st.close().linking[0][0], 4);
        let h = BraidWord::parse("2: 1 1").unwrap();
        assert_eq!(h.conjugate(1), h);
        assert_eq!(h.stabilize(-1).close().components, 2);
    }

    #[test]
    fn delete_component() {
        let b = BraidWord::parse("3: 1 1 2 2").unwrap();
        assert_eq!(b.close().components, 3);
        let d = b.delete_component(2);
        assert_eq!(d.strands(), 2);
        assert_eq!(d.word(), &[1, 1]);
        assert!(b.delete_component(1).is_empty());
    }
}
