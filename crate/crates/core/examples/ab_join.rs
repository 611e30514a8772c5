//! AB-join: for every window of A, its nearest window in B.

use mprofile::io::{gen_planted, random_walk, Planted};
use mprofile::profile::{stomp, ProfileParams};

fn main() -> mprofile::Result<()> {
    let a = gen_planted(&Planted::anomaly(3_000, 100, 1), 5)?;
    let a = a.univariate()?.clone();
    let b = random_walk(2_000, 6)?;
    let mp = stomp(&a, Some(&b), &ProfileParams::new(100))?;

    println!("{} windows of A joined against {} of B", mp.len(), b.len() - 99);
    let (i, d) = mp.argmin().unwrap();
    println!("best match: A[{i}] ~ B[{}] at {d:.3}", mp.index[i].unwrap());
    let (i, d) = mp.argmax().unwrap();
    println!("least like B: A[{i}] at {d:.3}");
    Ok(())
}
