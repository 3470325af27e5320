//! Regression on a CSV file with coefficients, linear scaling and a held-out
//! test split.

use std::io::Write;

use modular_gomea::data::load_csv;
use modular_gomea::gomea::{Gomea, RunConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> modular_gomea::Result<()> {
    let path = std::env::temp_dir().join("mgomea_csv_example.csv");
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut f = std::fs::File::create(&path).map_err(|e| modular_gomea::Error::io(&path, e))?;
    let mut text = String::from("load,temperature,power\n");
    for _ in 0..400 {
        let load: f64 = rng.random_range(0.0..10.0);
        let temp: f64 = rng.random_range(-5.0..35.0);
        let power = 3.0 + 0.8 * load * load + 0.1 * temp + rng.random_range(-0.1..0.1);
        text.push_str(&format!("{load},{temp},{power}\n"));
    }
    f.write_all(text.as_bytes()).map_err(|e| modular_gomea::Error::io(&path, e))?;

    let data = load_csv(&path, "power", 0.75, 1)?;
    println!("{} training rows, {} test rows", data.train_rows().len(), data.test_rows().len());

    let mut config = RunConfig::new(2, 3, 256, 9);
    config.linear_scaling = true;
    config.max_generations = Some(20);
    let result = Gomea::new(config, &data)?.run();

    let (x_test, y_test) = data.test_split();
    let best = result.best().expect("archive is never empty after a run");
    println!("train r2 {:.5}, test r2 {:.5}", result.best_r2(), best.r2(&x_test, &y_test)?);
    println!("{}", best.infix(data.feature_names()));
    Ok(())
}
