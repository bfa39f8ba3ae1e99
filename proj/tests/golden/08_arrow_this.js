var counter = {
  count: 0,
  make: function() {
    var self = this;
    return () => {
      self.count = self.count + 1;
      return this.count;
    };
  }
};
var bump = counter.make();
bump();
log(bump());
log(counter.count);
