function* accumulate() {
  var total = 0;
  var got = yield total;
  while (got !== 0) {
    total = total + got;
    got = yield total;
  }
  return total;
}
var acc = accumulate();
log(acc.next().value);
log(acc.next(5).value);
log(acc.next(7).value);
var finish = acc.next(0);
log(finish.value);
log(finish.done);
