function fact(n, acc = 1) {
  if (n <= 1) {
    return acc;
  }
  return fact(n - 1, acc * n);
}
log(fact(5));
log(fact(0));
function fibr(n) {
  if (n < 2) {
    return n;
  }
  return fibr(n - 1) + fibr(n - 2);
}
log(fibr(10));
