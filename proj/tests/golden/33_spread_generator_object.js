function* three() {
  yield "a";
  yield "b";
  yield "c";
}
var letters = [...three()];
log(letters.join(""));
function count(...xs) {
  return xs.length;
}
log(count(...three()));
