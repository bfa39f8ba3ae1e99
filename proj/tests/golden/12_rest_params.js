function tally(first, ...rest) {
  return first + rest.length;
}
log(tally(10));
log(tally(10, "a", "b"));
function join(...parts) {
  return parts.join("-");
}
log(join());
log(join("a"));
log(join("a", "b", "c"));
