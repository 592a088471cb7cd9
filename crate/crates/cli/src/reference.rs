//! Embedded reference ratios for the three test functions.

use serde::Deserialize;

use phantom_core::phantom::Strategy;

const DATA: &str = include_str!("../data/reference_tables.csv");

#[derive(Debug, Clone, Deserialize)]
struct Row {
    table: usize,
    function: String,
    k: usize,
    n: usize,
    strategy: String,
    value: f64,
    exempt: u8,
    note: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceCell {
    pub table: usize,
    pub function: String,
    pub pairs: usize,
    pub real_nodes: usize,
    pub strategy: Strategy,
    pub value: f64,
    pub exempt: bool,
    pub note: String,
}

pub fn cells() -> Vec<ReferenceCell> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(DATA.as_bytes());
    reader
        .deserialize::<Row>()
        .map(|r| {
            let r = r.expect("embedded reference table is well formed");
            ReferenceCell {
                table: r.table,
                strategy: Strategy::from_name(&r.strategy).expect("known strategy"),
                function: r.function,
                pairs: r.k,
                real_nodes: r.n,
                value: r.value,
                exempt: r.exempt != 0,
                note: r.note,
            }
        })
        .collect()
}

pub fn lookup<'a>(
    cells: &'a [ReferenceCell],
    function: &str,
    pairs: usize,
    real_nodes: usize,
    strategy: Strategy,
) -> Option<&'a ReferenceCell> {
    cells
        .iter()
        .find(|c| c.function == function && c.pairs == pairs && c.real_nodes == real_nodes && c.strategy == strategy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use phantom_core::phantom::Smoothness;

    #[test]
    fn complete_and_normalized() {
        let cells = cells();
        assert_eq!(cells.len(), 72);
        let c = lookup(&cells, "linear", 1, 9, Strategy::Blend(Smoothness::C1)).unwrap();
        assert_eq!(c.value, 8.7);
        assert_eq!(c.table, 1);
        assert_eq!(
            lookup(&cells, "sin075", 2, 13, Strategy::Selected).unwrap().value,
            3428.6
        );
        assert_eq!(cells.iter().filter(|c| c.exempt).count(), 4);
    }
}
