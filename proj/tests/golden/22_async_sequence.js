async function pipeline() {
  log("start");
  var a = await Promise.resolve(1);
  log("step " + a);
  var b = await Promise.resolve(a + 1);
  log("step " + b);
  return a + b;
}
pipeline().then(function(total) {
  log("total " + total);
});
log("sync");
