//! Benchmark workloads.

use cosegal::chain::{finite_colimit, ChainComplex, ChainMap, Colimit, DiagramArrow};
use cosegal::commutative::SymLaxFunctor;
use cosegal::fixtures::{cylinder, symmetric_cylinder};
use cosegal::laxdiag::LaxDiagram;
use cosegal::seqcat::ObjectSet;

/// The cylinder diagram on `objects` named objects.
pub fn cylinder_diagram(objects: usize, truncation: usize) -> LaxDiagram {
    let names = ["A", "B", "C"];
    let x = ObjectSet::new(names.into_iter().take(objects)).expect("distinct names");
    cylinder(&x, truncation).expect("cylinder fixture")
}

pub fn symmetric_diagram(truncation: usize) -> SymLaxFunctor {
    symmetric_cylinder(truncation).expect("symmetric fixture")
}

/// The coequalizer of the endpoint inclusions, glued `copies` times side
/// by side.
pub fn circle_chain(copies: usize) -> Colimit {
    let (unit, interval) = (ChainComplex::unit(), ChainComplex::interval());
    let endpoint = |row: usize| {
        let mut m = cosegal::chain::QMatrix::zeros(2, 1);
        m.set(row, 0, cosegal::chain::int(1));
        ChainMap::new(unit.clone(), interval.clone(), vec![m]).expect("endpoint inclusion")
    };
    let mut values = Vec::new();
    let mut arrows = Vec::new();
    for k in 0..copies {
        values.push(unit.clone());
        values.push(interval.clone());
        let next = (2 * k + 3) % (2 * copies);
        arrows.push(DiagramArrow { source: 2 * k, target: 2 * k + 1, map: endpoint(0) });
        arrows.push(DiagramArrow { source: 2 * k, target: next, map: endpoint(1) });
    }
    finite_colimit(&values, &arrows).expect("colimit")
}

#[cfg(test)]
mod tests {
    use super::*;
    use cosegal::chain::betti_numbers;

    #[test]
    fn circle_chain_is_a_circle() {
        for copies in [1, 2, 5] {
            assert_eq!(betti_numbers(&circle_chain(copies).colim), vec![1, 1]);
        }
    }

    #[test]
    fn workloads_build() {
        assert_eq!(cylinder_diagram(2, 2).shapes().objects().len(), 2);
        assert_eq!(symmetric_diagram(2).truncation(), 2);
    }
}
