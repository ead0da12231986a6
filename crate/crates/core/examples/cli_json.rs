use qform::cli::execute;
use qform::cli::json::{to_value, QfDoc};
use qform::lmonoid::zero_formation;
use qform::AbGroup;

fn main() {
    let out = execute(["qform", "si", "--a", "1", "--b", "6"]);
    print!("exit {}: {}", out.code, out.output);
    let out = execute(["qform", "stable-class", "--rkq", "1", "--a", "2", "--b", "15"]);
    print!("exit {}: {}", out.code, out.output);

    let dir = std::env::temp_dir().join(format!("qform-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    let z = zero_formation(&AbGroup::free(1), &[0]).expect("zero formation");
    let path = dir.join("zero.json");
    std::fs::write(&path, serde_json::to_string(&to_value(&QfDoc::new(&z))).expect("json")).expect("write");
    let out = execute(["qform", "validate", "--input", path.to_str().expect("utf-8 path")]);
    print!("exit {}: {}", out.code, out.output);
    let out = execute(["qform", "metabolic-basis", "--input", path.to_str().expect("utf-8 path")]);
    print!("exit {}: {}", out.code, out.output);
    std::fs::remove_dir_all(&dir).ok();
}
