//! Reconstruction of split auxiliary/modal + participle/infinitive complexes.

use super::ParseError;
use crate::cstruct::{CNode, Category, Child};
use crate::lexicon::Pos;

fn is_v0(n: &CNode) -> bool {
    n.cat == Category::V0
        && n.head_leaf()
            .is_some_and(|l| matches!(l.entry.pos, Pos::PastPart | Pos::Inf))
}

/// Moves a fronted or stranded participle/infinitive into the verb complex
/// of its clause's auxiliary or modal. Leaves keep their token indices, so
/// the result is no longer in surface order. Contiguous complexes are left
/// untouched.
pub fn reconstruct_verb_complex(tree: &CNode) -> Result<CNode, ParseError> {
    let mut t = tree.clone();
    rebuild(&mut t)?;
    Ok(t)
}

fn rebuild(node: &mut CNode) -> Result<(), ParseError> {
    for k in node.kids.iter_mut() {
        if let Child::Node(n) = k {
            rebuild(n)?;
        }
    }
    if node.cat != Category::IP {
        return Ok(());
    }
    let Some(ibar_at) = node
        .kids
        .iter()
        .position(|k| k.as_node().is_some_and(|n| n.cat == Category::IBar))
    else {
        return Ok(());
    };

    // fronted: FocP[V0] among the IP daughters
    let fronted = node.kids.iter().position(|k| {
        k.as_node()
            .is_some_and(|n| n.cat == Category::FocP && n.child_nodes().any(is_v0))
    });
    let mut moved: Option<CNode> = None;
    if let Some(fi) = fronted {
        let foc = node.kids.remove(fi);
        moved = foc.as_node().and_then(|f| f.child_nodes().find(|n| is_v0(n)).cloned());
    }
    let ibar_at = if fronted.is_some_and(|fi| fi < ibar_at) {
        ibar_at - 1
    } else {
        ibar_at
    };
    let Child::Node(ibar) = &mut node.kids[ibar_at] else {
        unreachable!()
    };

    // stranded: V0 opening a V' that follows SpecVP material
    if moved.is_none() {
        if let Some(Child::Node(vp)) = ibar.kids.get_mut(1) {
            let has_spec = vp.child_nodes().any(|n| n.cat == Category::SpecVP);
            if has_spec {
                if let Some(Child::Node(vbar)) = vp
                    .kids
                    .iter_mut()
                    .find(|k| k.as_node().is_some_and(|n| n.cat == Category::VBar))
                {
                    if vbar.kids.first().and_then(Child::as_node).is_some_and(is_v0) {
                        if let Child::Node(v) = vbar.kids.remove(0) {
                            moved = Some(v);
                        }
                        vbar.recompute_span();
                    }
                }
                vp.kids.retain(|k| {
                    !k.as_node()
                        .is_some_and(|n| n.cat == Category::VBar && n.kids.is_empty())
                });
                vp.recompute_span();
            }
        }
    }
    let Some(v0) = moved else {
        return Ok(());
    };
    let Some(Child::Node(i0)) = ibar.kids.get_mut(0) else {
        unreachable!("I' starts with I0")
    };
    let host = i0.kids.iter().position(|k| {
        k.as_leaf()
            .is_some_and(|l| matches!(l.entry.pos, Pos::Aux | Pos::Modal))
    });
    let Some(h) = host else {
        return Err(ParseError::NoHost {
            position: v0.span.start,
        });
    };
    let aux = i0.kids.remove(h);
    let feats = aux.as_leaf().map(|l| l.entry.morph.clone());
    let mut kids = vec![aux];
    kids.extend(v0.kids);
    let mut complex = CNode::new(Category::V0, kids).as_head();
    complex.feats = feats;
    i0.kids.insert(h, Child::Node(complex));
    i0.recompute_span();
    ibar.kids
        .retain(|k| !k.as_node().is_some_and(|n| n.cat == Category::VP && n.kids.is_empty()));
    ibar.recompute_span();
    node.recompute_span();
    Ok(())
}
