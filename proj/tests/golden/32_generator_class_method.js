class Range {
  constructor(limit) {
    this.limit = limit;
  }
  *walk() {
    var i = 0;
    while (i < this.limit) {
      yield i;
      i = i + 1;
    }
  }
}
var r = new Range(3);
var it = r.walk();
var out = [];
var s = it.next();
while (!s.done) {
  out.push(s.value);
  s = it.next();
}
log(out.join("+"));
