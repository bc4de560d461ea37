//! Colimit of a finite directed diagram read from JSON.

use daghilb::colimits::{dagger_mono_chain_check, finite_colimit, DiagramJson, FiniteDiagram};

const DIAGRAM: &str = r#"{
  "objects": [{"field": "R", "dim": 1}, {"field": "R", "dim": 2}, {"field": "R", "dim": 3}],
  "edges": [
    {"from": 0, "to": 1, "map": {"field": "R", "rows": 2, "cols": 1, "dom": 1, "cod": 2,
      "entries": [[1, 0], [0, 0]]}},
    {"from": 1, "to": 2, "map": {"field": "R", "rows": 3, "cols": 2, "dom": 2, "cod": 3,
      "entries": [[0, 0], [1, 0], [1, 0], [0, 0], [0, 0], [0, 0]]}}
  ]
}"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let j: DiagramJson = serde_json::from_str(DIAGRAM)?;
    let d = FiniteDiagram::from_json(&j)?;
    let c = finite_colimit(&d);
    println!("apex {} at node {}", c.apex, d.top());
    for (i, leg) in c.legs.iter().enumerate() {
        println!("leg {i}: {:?}", leg.mat());
    }
    println!("cocone residual {:.2e}", c.cocone_residual(&d));

    let report = dagger_mono_chain_check(&d)?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}
