class Builder {
  constructor(prefix = "item") {
    this.prefix = prefix;
    this.parts = [];
  }
  add(name = "anon", ...tags) {
    this.parts.push(this.prefix + ":" + name + "/" + tags.length);
    return this;
  }
  render() {
    return this.parts.join(" ");
  }
}
var b = new Builder();
b.add();
b.add("x", 1, 2);
log(b.render());
var c = new Builder("p").add("y").render();
log(c);
