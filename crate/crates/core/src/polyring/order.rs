use super::Monomial;
use std::cmp::Ordering;
use std::sync::Arc;

/// A monomial order. Variable 0 is the largest variable in every order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TermOrder {
    Lex,
    Grevlex,
    /// Product of graded reverse lexicographic orders on an ordered partition
    /// of the variables; comparison is decided by the first block that differs.
    Block(Arc<BlockOrder>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlockOrder {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl BlockOrder {
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Block of `v`; variables not mentioned fall into a trailing implicit block.
    fn block(&self, v: u32) -> usize {
        self.block_of
            .get(v as usize)
            .copied()
            .unwrap_or(self.blocks.len())
    }
}

impl TermOrder {
    /// Block elimination order. Panics if a variable appears in two blocks.
    pub fn block(blocks: Vec<Vec<usize>>) -> TermOrder {
        let mut blocks: Vec<Vec<usize>> = blocks.into_iter().filter(|b| !b.is_empty()).collect();
        for b in &mut blocks {
            b.sort_unstable();
        }
        let max = blocks.iter().flatten().copied().max().map_or(0, |m| m + 1);
        let mut block_of = vec![usize::MAX; max];
        for (bi, b) in blocks.iter().enumerate() {
            for &v in b {
                assert!(block_of[v] == usize::MAX, "variable {v} appears in two blocks");
                block_of[v] = bi;
            }
        }
        let implicit = blocks.len();
        for slot in &mut block_of {
            if *slot == usize::MAX {
                *slot = implicit;
            }
        }
        TermOrder::Block(Arc::new(BlockOrder { blocks, block_of }))
    }

    pub fn name(&self) -> String {
        match self {
            TermOrder::Lex => "lex".into(),
            TermOrder::Grevlex => "grevlex".into(),
            TermOrder::Block(b) => {
                let parts: Vec<String> = b
                    .blocks
                    .iter()
                    .map(|blk| blk.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
                    .collect();
                format!("block({})", parts.join(";"))
            }
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            TermOrder::Lex => lex(a.raw(), b.raw()),
            TermOrder::Grevlex => grevlex(a.raw(), b.raw(), |_| true),
            TermOrder::Block(bo) => {
                let nblocks = bo.blocks.len() + 1;
                for blk in 0..nblocks {
                    let o = grevlex(a.raw(), b.raw(), |v| bo.block(v) == blk);
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                Ordering::Equal
            }
        }
    }
}

fn lex(a: &[(u32, u32)], b: &[(u32, u32)]) -> Ordering {
    let mut i = a.iter();
    let mut j = b.iter();
    loop {
        match (i.next(), j.next()) {
            (None, None) => return Ordering::Equal,
            (Some(_), None) => return Ordering::Greater,
            (None, Some(_)) => return Ordering::Less,
            (Some(&(va, ea)), Some(&(vb, eb))) => {
                if va != vb {
                    // the side holding the smaller (= larger-ranked) variable wins
                    return if va < vb { Ordering::Greater } else { Ordering::Less };
                }
                if ea != eb {
                    return ea.cmp(&eb);
                }
            }
        }
    }
}

fn grevlex(a: &[(u32, u32)], b: &[(u32, u32)], keep: impl Fn(u32) -> bool) -> Ordering {
    let da: u32 = a.iter().filter(|p| keep(p.0)).map(|p| p.1).sum();
    let db: u32 = b.iter().filter(|p| keep(p.0)).map(|p| p.1).sum();
    if da != db {
        return da.cmp(&db);
    }
    let mut i = a.iter().rev().filter(|p| keep(p.0)).peekable();
    let mut j = b.iter().rev().filter(|p| keep(p.0)).peekable();
    loop {
        match (i.peek(), j.peek()) {
            (None, None) => return Ordering::Equal,
            (Some(_), None) => return Ordering::Less,
            (None, Some(_)) => return Ordering::Greater,
            (Some(&&(va, ea)), Some(&&(vb, eb))) => {
                if va == vb {
                    if ea != eb {
                        return eb.cmp(&ea);
                    }
                    i.next();
                    j.next();
                } else if va > vb {
                    return Ordering::Less;
                } else {
                    return Ordering::Greater;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_dense(e)
    }

    #[test]
    fn lex_examples() {
        assert_eq!(TermOrder::Lex.cmp(&m(&[2, 1]), &m(&[1, 3])), Ordering::Greater);
        assert_eq!(TermOrder::Lex.cmp(&m(&[0, 5]), &m(&[1, 0])), Ordering::Less);
    }

    #[test]
    fn one_is_least() {
        for o in [TermOrder::Lex, TermOrder::Grevlex, TermOrder::block(vec![vec![1], vec![0]])] {
            assert_eq!(o.cmp(&Monomial::one(), &m(&[1])), Ordering::Less);
            assert_eq!(o.cmp(&m(&[0, 1]), &Monomial::one()), Ordering::Greater);
        }
    }

    /// Textbook grevlex: larger total degree wins; on ties the monomial with the
    /// smaller exponent in the last variable where they differ is larger.
    fn grevlex_textbook(a: &[u32], b: &[u32]) -> Ordering {
        let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
        if da != db {
            return da.cmp(&db);
        }
        for k in (0..a.len()).rev() {
            if a[k] != b[k] {
                return b[k].cmp(&a[k]);
            }
        }
        Ordering::Equal
    }

    #[test]
    fn grevlex_matches_textbook_on_degree_three() {
        let mut all = Vec::new();
        for a in 0..=3u32 {
            for b in 0..=3 - a {
                all.push([a, b, 3 - a - b]);
            }
        }
        for x in &all {
            for y in &all {
                assert_eq!(TermOrder::Grevlex.cmp(&m(x), &m(y)), grevlex_textbook(x, y), "{x:?} {y:?}");
            }
        }
        assert_eq!(TermOrder::Grevlex.cmp(&m(&[2, 1]), &m(&[1, 2])), Ordering::Greater);
    }

    #[test]
    fn block_eliminates_first_block() {
        let o = TermOrder::block(vec![vec![2], vec![0, 1]]);
        // anything with t = var 2 beats any t-free monomial
        assert_eq!(o.cmp(&m(&[0, 0, 1]), &m(&[5, 5, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 1, 1])), Ordering::Greater);
    }
}
