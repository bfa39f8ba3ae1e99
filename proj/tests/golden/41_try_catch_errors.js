class Validator {
  check(value) {
    if (value < 0) {
      throw new Error("negative: " + value);
    }
    return value * 2;
  }
}
var v = new Validator();
try {
  log(v.check(5));
  log(v.check(-1));
  log("unreachable");
} catch (e) {
  log("caught " + e.message);
}
log("after");
