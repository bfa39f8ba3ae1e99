function makeCounter(start = 0) {
  var value = start;
  return {
    bump: function() {
      value = value + 1;
      return value;
    },
    read: function() {
      return value;
    }
  };
}
var c1 = makeCounter();
var c2 = makeCounter(10);
c1.bump();
c1.bump();
c2.bump();
log(c1.read());
log(c2.read());
