var inc = x => x + 1;
var add = (a, b) => a + b;
var answer = () => 42;
log(inc(1));
log(add(2, 3));
log(answer());
var apply = (f, v) => f(v);
log(apply(inc, 10));
