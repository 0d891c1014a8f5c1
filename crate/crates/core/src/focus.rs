//! Suspension of adjectival foci that cannot attach where they occur.

use std::ops::Range;

use thiserror::Error;

use crate::cstruct::{CNode, Category};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FocusError {
    #[error("focus at {focus:?} does not agree with head at {head:?}")]
    AgreementClash { focus: Range<usize>, head: Range<usize> },
    #[error("no suspended focus to resolve")]
    EmptyStack,
}

/// LIFO store of suspended focal constituents.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FocusStack {
    items: Vec<CNode>,
}

impl FocusStack {
    pub fn new() -> FocusStack {
        FocusStack::default()
    }

    pub fn suspend(&mut self, node: CNode) {
        self.items.push(node);
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn peek(&self) -> Option<&CNode> {
        self.items.last()
    }

    /// Pops the most recent suspended focus if it agrees in gender and
    /// number with `head`, and records the link on the head node.
    /// On a clash the stack is left unchanged.
    pub fn resolve(&mut self, head: &mut CNode) -> Result<CNode, FocusError> {
        let top = self.items.last().ok_or(FocusError::EmptyStack)?;
        let agree = match (top.head_leaf(), head.head_leaf()) {
            (Some(f), Some(h)) => f.entry.morph.agrees_gn(&h.entry.morph),
            _ => false,
        };
        if !agree {
            return Err(FocusError::AgreementClash {
                focus: top.span.clone(),
                head: head.span.clone(),
            });
        }
        let node = self.items.pop().expect("checked non-empty");
        if let Some(i) = node.head_leaf().and_then(|l| l.index) {
            head.focus_links.push(i);
        }
        Ok(node)
    }

    /// Whether `head` could resolve the top of the stack.
    pub fn can_resolve(&self, head: &CNode) -> bool {
        head.cat == Category::NP && self.clone().resolve(&mut head.clone()).is_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cstruct::{Child, Leaf};
    use crate::lexicon::Lexicon;

    fn node(lex: &Lexicon, cat: Category, words: &[(usize, &str)]) -> CNode {
        CNode::new(
            cat,
            words
                .iter()
                .map(|(i, w)| Child::Leaf(Leaf::new(*i, lex.lookup(w).remove(0))))
                .collect(),
        )
    }

    #[test]
    fn resolves_agreeing_head() {
        let lex = Lexicon::bundled();
        let mut st = FocusStack::new();
        st.suspend(node(&lex, Category::AP, &[(1, "divino")]));
        let mut np = node(&lex, Category::NP, &[(5, "silenzio")]);
        let ap = st.resolve(&mut np).unwrap();
        assert_eq!(ap.span, 1..2);
        assert_eq!(np.focus_links, vec![1]);
        assert!(st.is_empty());
    }

    #[test]
    fn clash_and_empty() {
        let lex = Lexicon::bundled();
        let mut st = FocusStack::new();
        let mut np = node(&lex, Category::NP, &[(3, "effigie")]);
        assert_eq!(st.resolve(&mut np), Err(FocusError::EmptyStack));
        st.suspend(node(&lex, Category::AP, &[(1, "divino")]));
        assert!(matches!(st.resolve(&mut np), Err(FocusError::AgreementClash { .. })));
        assert_eq!(st.len(), 1);
        assert!(np.focus_links.is_empty());
    }
}
