function sum3(a, b, c) {
  return a + b + c;
}
var triple = [1, 2, 3];
log(sum3(...triple));
var pair = [8, 9];
log(sum3(7, ...pair));
log(Math.max(...triple, 10));
