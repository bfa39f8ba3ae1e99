function* fib(limit) {
  var a = 0;
  var b = 1;
  while (a < limit) {
    yield a;
    var next = a + b;
    a = b;
    b = next;
  }
}
var seq = [];
var it = fib(30);
var s = it.next();
while (!s.done) {
  seq.push(s.value);
  s = it.next();
}
log(seq.join(","));
