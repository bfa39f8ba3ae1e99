function* numbers() {
  yield 1;
  yield 2;
  yield 3;
}
var it = numbers();
var step = it.next();
while (!step.done) {
  log(step.value);
  step = it.next();
}
log(step.done);
