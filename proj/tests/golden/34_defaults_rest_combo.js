function pack(kind = "box", ...items) {
  return kind + "(" + items.join("|") + ")";
}
log(pack());
log(pack("bag", "pen"));
log(pack("bin", "a", "b", "c"));
function tail(first, second = first * 2, ...rest) {
  return second + rest.length;
}
log(tail(3));
log(tail(3, 1, "x", "y"));
