use grentropy::graph::{generate_graph, GraphClass};
use grentropy::inequalities::thm1_renyi_shannon_bounds;
use grentropy::measures::{partition_distribution, renyi_entropy};
use grentropy::orbits::vertex_orbits;
use grentropy::Variant;

fn main() -> grentropy::Result<()> {
    let g = generate_graph(GraphClass::Star, 4, None)?;
    let d = partition_distribution::<f64>(&vertex_orbits(&g)?)?;
    assert!((renyi_entropy(&d, 2.0)? - 0.678_071_905_112_638).abs() < 1e-12);

    for report in thm1_renyi_shannon_bounds(&d, 0.5, Variant::Corrected, false)? {
        println!(
            "{} {:?} slack {}",
            report.theorem, report.holds, report.slack
        );
    }
    Ok(())
}
