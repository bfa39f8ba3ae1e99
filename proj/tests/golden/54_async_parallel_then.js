async function tagged(tag, value) {
  var v = await Promise.resolve(value);
  return tag + ":" + v;
}
var results = [];
tagged("a", 1).then(function(r) {
  results.push(r);
  log(r);
});
tagged("b", 2).then(function(r) {
  results.push(r);
  log(r);
  log(results.join(" "));
});
log("main done");
