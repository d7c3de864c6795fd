//! Certificates serialize to JSON, parse back and are checked independently
//! of the code that produced them.

use ualg::algebra::Subset;
use ualg::catalog;
use ualg::classctx::{is_epic, verify, Certificate, ClassContext};

fn main() -> ualg::Result<()> {
    let k = ClassContext::quasivariety(vec![catalog::boolean(1)])?;
    let b4 = catalog::boolean(2);
    let cert = is_epic(&Subset::new(4, [0, 3])?, &b4, &k)?;
    let json = cert.to_json();
    println!("{json}");

    let back = Certificate::from_json(&json)?;
    assert_eq!(back.to_json(), json);
    verify(&back)?;
    println!("verified {:?}", back.verdict);

    let tampered = json.replacen("\"NotEpic\"", "\"Epic\"", 1);
    match Certificate::from_json(&tampered).and_then(|c| verify(&c)) {
        Ok(()) => println!("tampered certificate accepted"),
        Err(e) => println!("tampered certificate rejected: {e}"),
    }
    Ok(())
}
