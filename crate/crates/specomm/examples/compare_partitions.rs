//! Partition-quality metrics by hand: the confusion table, optimal
//! matching accuracy, and normalized mutual information.
//!
//! ```bash
//! cargo run --example compare_partitions
//! ```

use std::collections::BTreeSet;

use specomm::{accuracy, confusion, nmi, Label, Partition};

fn partition(groups: &[&[&str]]) -> Partition {
    Partition::new(
        groups
            .iter()
            .map(|g| g.iter().map(|&s| Label::from(s)).collect::<BTreeSet<_>>())
            .collect(),
    )
    .unwrap()
}

fn main() -> specomm::Result<()> {
    let extracted = partition(&[&["a", "b", "c", "d"], &["e", "f", "g"], &["h"]]);
    let truth = partition(&[&["a", "b", "c"], &["d", "e", "f", "g"], &["h"]]);

    let table = confusion(&extracted, &truth)?;
    println!("confusion table (rows = extracted, columns = truth):");
    for (i, row) in table.counts.iter().enumerate() {
        println!("  row {i}: {row:?}  (size {})", table.row_sums[i]);
    }
    println!(
        "  column sums: {:?}  total: {}",
        table.col_sums, table.total
    );

    println!("\naccuracy = {:.4}", accuracy(&extracted, &truth)?);
    println!("NMI      = {:.4}", nmi(&extracted, &truth)?);

    // relabeling the same grouping is a perfect score
    let relabeled = partition(&[&["h"], &["a", "b", "c"], &["d", "e", "f", "g"]]);
    println!(
        "\nagainst a relabeled copy of the truth: accuracy = {:.4}, NMI = {:.4}",
        accuracy(&truth, &relabeled)?,
        nmi(&truth, &relabeled)?
    );
    Ok(())
}
