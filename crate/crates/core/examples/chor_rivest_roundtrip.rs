//! Generate a Chor-Rivest key over F_{13^5}, encrypt a few messages and
//! decrypt them again.
//!
//! ```text
//! cargo run --example chor_rivest_roundtrip
//! ```

use knapqsec::chor_rivest::{decrypt, encode_message, encrypt, keygen, message_space};
use num_bigint::BigUint;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (p, h) = (13, 5);
    let (public, private) = keygen(p, h, 2024)?;
    let field = private.field()?;
    println!(
        "field F_{p}^{h}, group order {} = {:?}",
        field.group_order(),
        field.group_order_factors()
    );
    println!("f(x) = {}", private.modulus_poly());
    println!("g    = {}", private.generator());
    println!("public weights: {:?}", public.b);

    let space = message_space(p, h);
    println!("{space} messages");
    for m in [BigUint::ZERO, BigUint::from(1000u32), &space - 1u32] {
        let codeword: String = encode_message(&m, p as usize, h)?
            .bits()
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect();
        let c = encrypt(&public, &m)?;
        let back = decrypt(&private, &public, c)?;
        println!("m = {m:<5} M = {codeword}  c = {c:<7} decrypted = {back}");
        assert_eq!(back, m);
    }
    Ok(())
}
