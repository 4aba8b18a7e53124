//! A campaign file driven through the command-line entry point, writing CSV,
//! JSON and SVG artifacts.
//!
//! Run with `cargo run --release --example campaign [output_dir]`.

use polylab::cli::{run_command, CampaignFile};
use polylab::experiments::{ExperimentConfig, ExperimentKind};
use polylab::ConvexBody;

fn main() -> polylab::Result<()> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "campaign_out".into());
    let ball2 = ConvexBody::unit_ball(2)?;
    let mut grass = ExperimentConfig::new("grassmann_4_2", ExperimentKind::GrassmannAngle, ConvexBody::unit_ball(4)?, 2)
        .with_seed(7);
    grass.a_grid = vec![0.05, 0.1, 0.2, 0.4];
    grass.samples = 100_000;
    let campaign = CampaignFile {
        output_dir: out.clone().into(),
        threads: 0,
        experiments: vec![
            ExperimentConfig::new("variance_d2", ExperimentKind::Variance, ball2.clone(), 2)
                .with_grid(vec![32, 64, 128, 256])
                .with_replications(500)
                .with_seed(7),
            ExperimentConfig::new("deficit_d2", ExperimentKind::MeanDeficit, ball2, 1)
                .with_grid(vec![32, 64, 128, 256])
                .with_replications(500)
                .with_seed(7),
            grass,
        ],
    };
    std::fs::create_dir_all(&out)?;
    let path = format!("{out}/campaign.json");
    std::fs::write(&path, serde_json::to_string_pretty(&campaign)?)?;
    let code = run_command(["polylab", "campaign", "--config", &path]);
    println!("exit code {code}; artifacts in {out}/");
    for entry in std::fs::read_dir(&out)? {
        println!("  {}", entry?.file_name().to_string_lossy());
    }
    Ok(())
}
